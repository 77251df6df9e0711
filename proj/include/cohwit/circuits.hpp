#pragma once

#include <vector>

#include "cohwit/core.hpp"
#include "cohwit/optimize.hpp"

namespace cohwit {

/// cos(th)|0> + e^{i ph} sin(th)|1>.
PureState prepare_qubit(double th, double ph);

/// cos th1 cos th2 |0> + sin th1 cos th2 e^{i ph1} |1> + sin th2 e^{i ph2} |2>.
PureState prepare_qutrit(double th1, double th2, double ph1, double ph2);

/// cos th2 cos th1 |0> + sin th2 cos th1 e^{i ph1} |1>
///   + sin th1 cos th3 e^{i ph2} |2> + sin th1 sin th3 e^{i ph3} |3>.
PureState prepare_ququart(double th1, double th2, double th3, double ph1, double ph2, double ph3);

/// Restricted 5-mode family:
/// sin th1 cos th2 sin th4 |0> + sin th1 cos th2 cos th4 |1> + sin th1 sin th2 e^{i ph1} |2>
///   + cos th1 sin th3 e^{i ph2} |3> + cos th1 cos th3 e^{i ph3} |4>.
PureState prepare_5mode(double th1, double th2, double th3, double th4, double ph1, double ph2, double ph3);

/// Parameter order: qubit (th, ph); qutrit (th1, th2, ph1, ph2);
/// ququart (th1, th2, th3, ph1, ph2, ph3); 5-mode (th1..th4, ph1..ph3).
StateFamily qubit_family();
StateFamily qutrit_family();
StateFamily ququart_family();
StateFamily five_mode_family();

/// Angles reproducing a given state up to global phase.
std::vector<double> qubit_angles(const PureState& psi);
std::vector<double> qutrit_angles(const PureState& psi);
std::vector<double> ququart_angles(const PureState& psi);

/// Qubit pentagon on the Bloch equator: th = pi/4, ph_k = 2 pi k / 5.
std::vector<PureState> pentagon_states();

}  // namespace cohwit
