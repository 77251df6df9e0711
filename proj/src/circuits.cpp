#include "cohwit/circuits.hpp"

#include <cmath>
#include <numbers>

namespace cohwit {

namespace {

const Complex kI(0.0, 1.0);

Complex phase(double a) { return std::exp(kI * a); }

void require(const std::vector<double>& p, std::size_t n) {
  if (p.size() != n) throw ValidationError("state family: expected " + std::to_string(n) + " parameters");
}

/// Strips the global phase so that the first non-negligible amplitude is real.
CVector dephased(const PureState& psi) {
  CVector a = psi.amplitudes();
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    if (std::abs(a(k)) > 1e-14) {
      a *= std::conj(a(k)) / std::abs(a(k));
      break;
    }
  }
  return a;
}

double rel_phase(Complex z) { return std::abs(z) > 1e-14 ? std::arg(z) : 0.0; }

}  // namespace

PureState prepare_qubit(double th, double ph) {
  CVector v(2);
  v << std::cos(th), phase(ph) * std::sin(th);
  return PureState::normalized(v);
}

PureState prepare_qutrit(double th1, double th2, double ph1, double ph2) {
  CVector v(3);
  v << std::cos(th1) * std::cos(th2), std::sin(th1) * std::cos(th2) * phase(ph1), std::sin(th2) * phase(ph2);
  return PureState::normalized(v);
}

PureState prepare_ququart(double th1, double th2, double th3, double ph1, double ph2, double ph3) {
  CVector v(4);
  v << std::cos(th2) * std::cos(th1), std::sin(th2) * std::cos(th1) * phase(ph1),
      std::sin(th1) * std::cos(th3) * phase(ph2), std::sin(th1) * std::sin(th3) * phase(ph3);
  return PureState::normalized(v);
}

PureState prepare_5mode(double th1, double th2, double th3, double th4, double ph1, double ph2, double ph3) {
  CVector v(5);
  v << std::sin(th1) * std::cos(th2) * std::sin(th4), std::sin(th1) * std::cos(th2) * std::cos(th4),
      std::sin(th1) * std::sin(th2) * phase(ph1), std::cos(th1) * std::sin(th3) * phase(ph2),
      std::cos(th1) * std::cos(th3) * phase(ph3);
  return PureState::normalized(v);
}

StateFamily qubit_family() {
  return {2, [](const std::vector<double>& p) {
            require(p, 2);
            return prepare_qubit(p[0], p[1]);
          }};
}

StateFamily qutrit_family() {
  return {4, [](const std::vector<double>& p) {
            require(p, 4);
            return prepare_qutrit(p[0], p[1], p[2], p[3]);
          }};
}

StateFamily ququart_family() {
  return {6, [](const std::vector<double>& p) {
            require(p, 6);
            return prepare_ququart(p[0], p[1], p[2], p[3], p[4], p[5]);
          }};
}

StateFamily five_mode_family() {
  return {7, [](const std::vector<double>& p) {
            require(p, 7);
            return prepare_5mode(p[0], p[1], p[2], p[3], p[4], p[5], p[6]);
          }};
}

std::vector<double> qubit_angles(const PureState& psi) {
  if (psi.dim() != 2) throw ValidationError("qubit_angles: need a qubit");
  const CVector a = dephased(psi);
  return {std::atan2(std::abs(a(1)), std::abs(a(0))), rel_phase(a(1)) - rel_phase(a(0))};
}

std::vector<double> qutrit_angles(const PureState& psi) {
  if (psi.dim() != 3) throw ValidationError("qutrit_angles: need a qutrit");
  const CVector a = dephased(psi);
  const double th1 = std::atan2(std::abs(a(1)), std::abs(a(0)));
  const double th2 = std::atan2(std::abs(a(2)), std::hypot(std::abs(a(0)), std::abs(a(1))));
  const double p0 = rel_phase(a(0));
  return {th1, th2, rel_phase(a(1)) - p0, rel_phase(a(2)) - p0};
}

std::vector<double> ququart_angles(const PureState& psi) {
  if (psi.dim() != 4) throw ValidationError("ququart_angles: need a ququart");
  const CVector a = dephased(psi);
  const double th1 = std::atan2(std::hypot(std::abs(a(2)), std::abs(a(3))), std::hypot(std::abs(a(0)), std::abs(a(1))));
  const double th2 = std::atan2(std::abs(a(1)), std::abs(a(0)));
  const double th3 = std::atan2(std::abs(a(3)), std::abs(a(2)));
  const double p0 = rel_phase(a(0));
  return {th1, th2, th3, rel_phase(a(1)) - p0, rel_phase(a(2)) - p0, rel_phase(a(3)) - p0};
}

std::vector<PureState> pentagon_states() {
  std::vector<PureState> out;
  for (int k = 0; k < 5; ++k) out.push_back(prepare_qubit(std::numbers::pi / 4, 2.0 * std::numbers::pi * k / 5.0));
  return out;
}

}  // namespace cohwit
