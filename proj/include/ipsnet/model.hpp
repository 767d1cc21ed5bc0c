#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ipsnet/errors.hpp"

namespace ipsnet {

// Linking function applied to mixed-state vertex pairs.
enum class Link { Mean, Harmonic };

enum class VertexState : std::uint8_t { Minus = 0, Plus = 1 };

// f(p,q) = (p+q)/2
double link_mean(double pi_plus, double pi_minus);

// f(p,q) = p*q/(p+q), with f(0,0) = 0
double link_harmonic(double pi_plus, double pi_minus);

double link_value(Link link, double pi_plus, double pi_minus);

Link parse_link(const std::string& name);  // "mean" | "harmonic"
std::string link_name(Link link);

// Full parameter set of the dynamics. Construct through validate_params;
// immutable value type afterwards.
struct ModelParams {
  int n = 2;
  double alpha = 0.5;
  double pi_plus = 0.5;
  double pi_minus = 0.5;
  Link link = Link::Mean;

  double f() const { return link_value(link, pi_plus, pi_minus); }
  int edge_slots() const { return n * (n - 1) / 2; }
};

// Validates ranges (n >= 2, alpha in (0,1), pi's in [0,1]) and, for the
// mean link, the ordering pi_plus >= pi_minus. Throws ValidationError
// with the full list of violations.
ModelParams validate_params(int n, double alpha, double pi_plus,
                            double pi_minus, Link link);

// Activation probability of an edge between vertices in states a and b.
double pair_probability(VertexState a, VertexState b,
                        const ModelParams& params);

// One snapshot of the system: n vertex states plus a presence indicator
// for each of the C(n,2) edge slots, upper-triangular order.
struct SystemState {
  std::vector<VertexState> states;
  std::vector<std::uint8_t> edges;

  int n() const { return static_cast<int>(states.size()); }

  // Slot index of pair (i,j), i < j, in row-major upper-triangular order.
  static int slot(int i, int j, int n) {
    return i * n - i * (i + 1) / 2 + (j - i - 1);
  }

  long edge_count() const;
  int plus_count() const;
};

}  // namespace ipsnet
