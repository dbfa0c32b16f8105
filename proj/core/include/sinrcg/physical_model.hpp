#pragma once

// Geometry, links and the interference-limited SIR model.
//
// Links live in the Euclidean plane. Noise is not modelled: a link i in a
// concurrently transmitting set S succeeds under power assignment P iff
//
//   P(i) / l_i^alpha  >=  beta_i * sum_{j in S, j != i} P(j) / d_ji^alpha
//
// where d_ji is the distance from j's sender to i's receiver.

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace sinrcg {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;
};

double distance(const Point& a, const Point& b);

struct Link {
  int id = 0;
  Point sender;
  Point receiver;
  double beta = 1.0;    // SIR threshold, >= 1
  double weight = 1.0;  // utility for weighted selection, >= 0
  int origin_id = 0;    // equals id unless the link is a rate-control copy

  double length() const { return distance(sender, receiver); }
};

// Throws std::invalid_argument when a field violates the link invariants.
void validate(const Link& link);

Link make_link(int id, Point sender, Point receiver, double beta = 1.0, double weight = 1.0);

struct Instance {
  double alpha = 3.0;
  int m = 2;
  std::vector<Link> links;
};

// alpha > m, distinct ids, every link valid.
void validate(const Instance& instance);

// Position of the link with the given id, or nullopt.
std::optional<std::size_t> find_link(const Instance& instance, int id);

// Links of `instance` with the given ids, in the order of `ids`.
// Throws std::out_of_range on an unknown id.
std::vector<Link> select_links(const Instance& instance, std::span<const int> ids);

/// Oblivious power rule. `uniform()` gives every link the same power;
/// `tau(t)` gives link i the power efflen_i^(t * alpha), 0 < t < 1.
class PowerAssignment {
 public:
  enum class Kind { Uniform, Tau };

  static PowerAssignment uniform() { return PowerAssignment(Kind::Uniform, 0.0); }
  static PowerAssignment tau(double t);

  Kind kind() const { return kind_; }
  double tau_value() const { return tau_; }

  double power(const Link& link, double alpha) const;

 private:
  PowerAssignment(Kind kind, double tau) : kind_(kind), tau_(tau) {}

  Kind kind_;
  double tau_;
};

inline constexpr double kSingletonSir = std::numeric_limits<double>::infinity();
inline constexpr double kDefaultFeasibilityTolerance = 1e-9;

struct FeasibilityReport {
  bool feasible = true;
  std::unordered_map<int, double> per_link_sir;
  std::optional<int> worst_link;  // smallest SIR / beta ratio
};

/// beta^(1/alpha) * l: the length a link would need at threshold 1 to see
/// the same SIR.
double effective_length(const Link& link, double alpha);

/// d(s_i, r_j)
double directed_distance(const Link& i, const Link& j);

/// Minimum distance between any endpoint of i and any endpoint of j.
double link_distance(const Link& i, const Link& j);

/// SIR of `target` within `set`. +inf when target is alone, 0 when some
/// interferer's sender sits on target's receiver. Throws
/// std::invalid_argument when no member of `set` has target's id.
double sir(std::span<const Link> set, const Link& target, const PowerAssignment& power,
           double alpha);

/// Per-link SIR check with relative slack: SIR >= beta * (1 - tol).
FeasibilityReport is_feasible(std::span<const Link> set, const PowerAssignment& power,
                              double alpha, double tol = kDefaultFeasibilityTolerance);

/// Verdict only; same rule as is_feasible without building the report.
bool feasible(std::span<const Link> set, const PowerAssignment& power, double alpha,
              double tol = kDefaultFeasibilityTolerance);

/// Closed-form two-link feasibility under arbitrary power control:
/// d_ij * d_ji >= efflen_i * efflen_j.
bool is_pair_feasible_oracle(const Link& i, const Link& j, double alpha);

/// Normalised interference on `target` under P_tau:
///   sum_j efflen_j^(tau a) efflen_i^((1-tau) a) / d_ji^a.
/// The P_tau SIR of target equals beta / i_tau, so target is satisfied iff i_tau <= 1.
double i_tau(std::span<const Link> set, const Link& target, double tau, double alpha);

/// Largest ratio of effective lengths in the set; 1 for sets of size < 2.
double length_diversity(std::span<const Link> set, double alpha);

}  // namespace sinrcg
