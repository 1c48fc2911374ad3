#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/SparseCore>

namespace equisched::ip {

using Integer = std::int64_t;
using SparseMatrix = Eigen::SparseMatrix<Integer, Eigen::RowMajor>;
using IntegerVector = Eigen::Matrix<Integer, Eigen::Dynamic, 1>;

enum class Relation { less_equal, equal, greater_equal };

struct Variable {
    std::string name;
    Integer lower = 0;
    Integer upper = 0;
};

struct Term {
    int var = 0;
    Integer coeff = 0;
};

struct Constraint {
    std::vector<Term> terms;
    Relation relation = Relation::less_equal;
    Integer rhs = 0;
    std::string tag;
};

/// Bounded integer variables plus linear constraints. Pure feasibility; there is no objective.
class ConstraintSystem {
  public:
    /// Returns the new variable's index. Names must be unique and lower <= upper.
    int add_variable(std::string name, Integer lower, Integer upper);
    /// Zero coefficients are dropped; repeated variables are merged.
    void add_constraint(std::vector<Term> terms, Relation relation, Integer rhs, std::string tag);

    const std::vector<Variable> &variables() const { return vars_; }
    const std::vector<Constraint> &constraints() const { return constraints_; }
    int num_variables() const { return static_cast<int>(vars_.size()); }
    int num_constraints() const { return static_cast<int>(constraints_.size()); }
    std::optional<int> find(std::string_view name) const;

    /// Coefficient matrix, one row per constraint.
    SparseMatrix matrix() const;
    IntegerVector rhs() const;

    /// Debug dump: {"variables": [...], "constraints": [...]}. Not a stable format.
    std::string to_json() const;

  private:
    std::vector<Variable> vars_;
    std::vector<Constraint> constraints_;
    std::unordered_map<std::string, int> by_name_;
};

/// Values in declaration order of the originating system.
struct Assignment {
    std::vector<Integer> values;

    Integer operator[](int var) const { return values[var]; }
    /// Throws std::out_of_range for unknown names.
    Integer value(const ConstraintSystem &sys, std::string_view name) const;
};

/// True iff every value is within its box and every constraint holds.
/// Throws std::invalid_argument if the assignment does not cover every variable.
bool check(const ConstraintSystem &sys, const Assignment &a);

enum class Status { feasible, infeasible, guard_exceeded };

struct SolveResult {
    Status status = Status::infeasible;
    std::optional<Assignment> assignment;
    std::uint64_t nodes = 0;
};

inline constexpr std::uint64_t kDefaultNodeGuard = 10'000'000;

/// Complete branch-and-prune search over the variable boxes: depth-first, branching on the
/// first unfixed variable in declaration order with values tried from lowest to highest,
/// bounds propagated to a fixpoint at every node. Infeasibility is proven by exhaustion.
SolveResult solve_feasibility(const ConstraintSystem &sys, std::uint64_t node_guard = kDefaultNodeGuard);

std::string_view to_string(Status status);

}  // namespace equisched::ip
