#include "rfcomp/reference_corpus.hpp"

#include "rfcomp/error.hpp"

namespace rfcomp {

std::span<const ReferenceDesign> reference_designs() {
  static const std::vector<ReferenceDesign> kDesigns = {
      {"Heuristic FSM, n=2", Method::fsm, Selection::heuristic, 2,
       {187.3, 33.8},
       {49.3, 196.5},
       "[(49.3)_0(4.5)_{90}(98.5)_{180}(4.5)_{90}(49.3)_0]^{\u00d721}[(196.5)_0(4.2)_{90}(393.0)_{180}(4.2)_{90}(196.5)_0]^{\u00d74}",
       0.06831, 127.120},
      {"Heuristic FSM, n=3", Method::fsm, Selection::heuristic, 3,
       {201.1, 49.2, 7.3},
       {49.3, 196.5, 369.0},
       "[(49.3)_0(4.4)_{90}(98.5)_{180}(4.4)_{90}(49.3)_0]^{\u00d723}[(196.5)_0(4.1)_{90}(393.0)_{180}(4.1)_{90}(196.5)_0]^{\u00d76}[(369.0)_0(3.6)_{90}(738.0)_{180}(3.6)_{90}(369.0)_0]^{\u00d71}",
       0.06523, 187.200},
      {"Heuristic FSM, n=4", Method::fsm, Selection::heuristic, 4,
       {175.2903, 18.3977, -10.8059, -5.67454},
       {49.3, 196.5, 369.0, 546.0},
       "[(49.3)_0(4.4)_{90}(98.5)_{180}(4.4)_{90}(49.3)_0]^{\u00d720}[(196.5)_0(3.1)_{90}(393.0)_{180}(3.1)_{90}(196.5)_0]^{\u00d73}[(369.0)_0(-2.7)_{90}(738.0)_{180}(-2.7)_{90}(369.0)_0]^{\u00d72}[(546.0)_0(-2.8)_{90}(1092.1)_{180}(-2.8)_{90}(546.0)_0]^{\u00d71}",
       0.06473, 199.600},
      {"Heuristic dmod, n=2", Method::delta_mod, Selection::heuristic, 2,
       {105.5, 16.7},
       {90.0, 270.0},
       "[(90.0)_0(180.0)_{175.6}(90.0)_0]^{\u00d712}[(270.0)_0(540.0)_{175.8}(270.0)_0]^{\u00d72}",
       0.02012, 115.230},
      {"Heuristic dmod, n=3", Method::delta_mod, Selection::heuristic, 3,
       {108.3, 22.4, 4.3},
       {90.0, 270.0, 450.0},
       "[(90.0)_0(180.0)_{175.8}(90.0)_0]^{\u00d713}[(270.0)_0(540.0)_{176.3}(270.0)_0]^{\u00d73}[(450.0)_0(900.0)_{177.9}(450.0)_0]^{\u00d71}",
       0.00290, 172.001},
      {"Heuristic dmod, n=4", Method::delta_mod, Selection::heuristic, 4,
       {109.8, 25.7, 7.1, 1.2},
       {90.0, 270.0, 450.0, 630.0},
       "[(90.0)_0(180.0)_{175.8}(90.0)_0]^{\u00d713}[(270.0)_0(540.0)_{175.7}(270.0)_0]^{\u00d73}[(450.0)_0(900.0)_{176.4}(450.0)_0]^{\u00d71}[(630.0)_0(1260.0)_{179.4}(630.0)_0]^{\u00d71}",
       0.00044, 216.138},
      {"Greedy FSM, n=2", Method::fsm, Selection::greedy, 2,
       {191.9, 35.9},
       {49.9, 192.7},
       "[(49.9)_0(4.4)_{90}(99.9)_{180}(4.4)_{90}(49.9)_0]^{\u00d722}[(192.7)_0(4.5)_{90}(385.4)_{180}(4.5)_{90}(192.7)_0]^{\u00d74}",
       0.04031, 130.497},
      {"Greedy FSM, n=3", Method::fsm, Selection::greedy, 3,
       {197.4, 40.9, -3.8},
       {49.9, 192.7, 502.9},
       "[(49.9)_0(4.5)_{90}(99.9)_{180}(4.5)_{90}(49.9)_0]^{\u00d722}[(192.7)_0(4.1)_{90}(385.4)_{180}(4.1)_{90}(192.7)_0]^{\u00d75}[(502.9)_0(-1.9)_{90}(1005.8)_{180}(-1.9)_{90}(502.9)_0]^{\u00d71}",
       0.01506, 179.062},
      {"Greedy FSM, n=4", Method::fsm, Selection::greedy, 4,
       {200.7, 43.7, -5.9, -1.9},
       {49.9, 192.7, 502.9, 666.8},
       "[(49.9)_0(4.4)_{90}(99.9)_{180}(4.4)_{90}(49.9)_0]^{\u00d723}[(192.7)_0(4.4)_{90}(385.4)_{180}(4.4)_{90}(192.7)_0]^{\u00d75}[(502.9)_0(-3.0)_{90}(1005.8)_{180}(-3.0)_{90}(502.9)_0]^{\u00d71}[(666.8)_0(-0.9)_{90}(1333.7)_{180}(-0.9)_{90}(666.8)_0]^{\u00d71}",
       0.00941, 229.101},
      {"Greedy dmod, n=2", Method::delta_mod, Selection::greedy, 2,
       {105.5, 16.6},
       {86.7, 259.1},
       "[(86.7)_0(173.4)_{175.6}(86.7)_0]^{\u00d712}[(259.1)_0(518.1)_{175.8}(259.1)_0]^{\u00d72}",
       0.02029, 110.952},
      {"Greedy dmod, n=3", Method::delta_mod, Selection::greedy, 3,
       {108.2, 22.2, 4.1},
       {86.7, 259.1, 427.8},
       "[(86.7)_0(173.4)_{175.8}(86.7)_0]^{\u00d713}[(259.1)_0(518.1)_{176.3}(259.1)_0]^{\u00d73}[(427.8)_0(855.7)_{177.9}(427.8)_0]^{\u00d71}",
       0.00422, 165.178},
      {"Greedy dmod, n=4", Method::delta_mod, Selection::greedy, 4,
       {108.5, 22.9, 4.6, -0.3},
       {86.7, 259.1, 427.8, 730.2},
       "[(86.7)_0(173.4)_{175.8}(86.7)_0]^{\u00d713}[(259.1)_0(518.1)_{176.2}(259.1)_0]^{\u00d73}[(427.8)_0(855.7)_{177.7}(427.8)_0]^{\u00d71}[(730.2)_0(1460.5)_{180.2}(730.2)_0]^{\u00d71}",
       0.00247, 216.177},
      {"Gradient FSM, n=2", Method::fsm, Selection::gradient, 2,
       {163.4, -15.7},
       {51.5, 373.7},
       "[(51.5)_0(4.3)_{90}(103.0)_{180}(4.3)_{90}(51.5)_0]^{\u00d719}[(373.7)_0(-3.9)_{90}(747.4)_{180}(-3.9)_{90}(373.7)_0]^{\u00d72}",
       0.07339, 120.519},
      {"Gradient FSM, n=3", Method::fsm, Selection::gradient, 3,
       {169.6, -23.9, -10.3},
       {52.4, 379.1, 550.3},
       "[(52.4)_0(4.5)_{90}(104.9)_{180}(4.5)_{90}(52.4)_0]^{\u00d719}[(379.1)_0(-4.0)_{90}(758.2)_{180}(-4.0)_{90}(379.1)_0]^{\u00d73}[(550.3)_0(-2.6)_{90}(1100.6)_{180}(-2.6)_{90}(550.3)_0]^{\u00d72}",
       0.01874, 225.780},
      {"Gradient FSM, n=4", Method::fsm, Selection::gradient, 4,
       {174.4, -30.6, -19.0, -5.1},
       {53.1, 381.4, 554.0, 727.9},
       "[(53.1)_0(4.4)_{90}(106.1)_{180}(4.4)_{90}(53.1)_0]^{\u00d720}[(381.4)_0(-3.8)_{90}(762.7)_{180}(-3.8)_{90}(381.4)_0]^{\u00d74}[(554.0)_0(-3.2)_{90}(1108.0)_{180}(-3.2)_{90}(554.0)_0]^{\u00d73}[(727.9)_0(-2.6)_{90}(1455.8)_{180}(-2.6)_{90}(727.9)_0]^{\u00d71}",
       0.00423, 347.413},
      {"Gradient dmod, n=2", Method::delta_mod, Selection::gradient, 2,
       {105.5, 16.6},
       {88.6, 265.1},
       "[(88.6)_0(177.1)_{175.6}(88.6)_0]^{\u00d712}[(265.1)_0(530.1)_{175.9}(265.1)_0]^{\u00d72}",
       0.01940, 113.341},
      {"Gradient dmod, n=3", Method::delta_mod, Selection::gradient, 3,
       {108.3, 22.4, 4.3},
       {89.1, 267.0, 444.5},
       "[(89.1)_0(178.1)_{175.8}(89.1)_0]^{\u00d713}[(267.0)_0(534.1)_{176.3}(267.0)_0]^{\u00d73}[(444.5)_0(889.0)_{177.9}(444.5)_0]^{\u00d71}",
       0.00280, 170.134},
      {"Gradient dmod, n=4", Method::delta_mod, Selection::gradient, 4,
       {109.8, 25.7, 7.1, 1.2},
       {90.0, 270.0, 450.0, 630.0},
       "[(90.0)_0(180.0)_{175.8}(90.0)_0]^{\u00d713}[(270.0)_0(540.0)_{175.7}(270.0)_0]^{\u00d73}[(450.0)_0(900.0)_{176.4}(450.0)_0]^{\u00d71}[(630.0)_0(1260.0)_{179.4}(630.0)_0]^{\u00d71}",
       0.00044, 216.137},
  };
  return kDesigns;
}

const ReferenceDesign& reference_design(Method method, Selection selection, int terms) {
  for (const ReferenceDesign& d : reference_designs()) {
    if (d.method == method && d.selection == selection && d.terms == terms) return d;
  }
  throw PreconditionError("no reference design for the requested cell");
}

DesignRecord to_design(const ReferenceDesign& ref) {
  DesignRecord d;
  d.method = ref.method;
  d.theta_deg = 90.0;
  d.delta = 0.5;
  d.gammas_deg = ref.gammas_deg;
  d.alphas_deg = ref.alphas_deg;
  d.selection = ref.selection;
  return d;
}

}  // namespace rfcomp
