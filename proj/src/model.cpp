#include "ipsnet/model.hpp"

#include <numeric>

namespace ipsnet {

double link_mean(double pi_plus, double pi_minus) {
  return 0.5 * (pi_plus + pi_minus);
}

double link_harmonic(double pi_plus, double pi_minus) {
  const double sum = pi_plus + pi_minus;
  if (sum == 0.0) return 0.0;
  return pi_plus * pi_minus / sum;
}

double link_value(Link link, double pi_plus, double pi_minus) {
  switch (link) {
    case Link::Mean:
      return link_mean(pi_plus, pi_minus);
    case Link::Harmonic:
      return link_harmonic(pi_plus, pi_minus);
  }
  return 0.0;  // unreachable
}

Link parse_link(const std::string& name) {
  if (name == "mean") return Link::Mean;
  if (name == "harmonic") return Link::Harmonic;
  throw ValidationError({{"OutOfRange", "link"}});
}

std::string link_name(Link link) {
  return link == Link::Mean ? "mean" : "harmonic";
}

ModelParams validate_params(int n, double alpha, double pi_plus,
                            double pi_minus, Link link) {
  std::vector<Violation> violations;
  if (n < 2) violations.push_back({"OutOfRange", "n"});
  if (!(alpha > 0.0 && alpha < 1.0)) violations.push_back({"OutOfRange", "alpha"});
  if (!(pi_plus >= 0.0 && pi_plus <= 1.0))
    violations.push_back({"OutOfRange", "pi_plus"});
  if (!(pi_minus >= 0.0 && pi_minus <= 1.0))
    violations.push_back({"OutOfRange", "pi_minus"});
  // The mean link is defined under the convention pi_plus >= pi_minus;
  // equality is a permitted degenerate boundary.
  if (link == Link::Mean && pi_plus >= 0.0 && pi_minus >= 0.0 &&
      pi_plus <= 1.0 && pi_minus <= 1.0 && pi_plus < pi_minus)
    violations.push_back({"OrderingViolation", "pi_plus,pi_minus"});
  if (!violations.empty()) throw ValidationError(std::move(violations));
  return ModelParams{n, alpha, pi_plus, pi_minus, link};
}

double pair_probability(VertexState a, VertexState b,
                        const ModelParams& params) {
  if (a == VertexState::Plus && b == VertexState::Plus) return params.pi_plus;
  if (a == VertexState::Minus && b == VertexState::Minus)
    return params.pi_minus;
  return params.f();
}

long SystemState::edge_count() const {
  return std::accumulate(edges.begin(), edges.end(), 0L);
}

int SystemState::plus_count() const {
  int c = 0;
  for (VertexState s : states)
    if (s == VertexState::Plus) ++c;
  return c;
}

}  // namespace ipsnet
