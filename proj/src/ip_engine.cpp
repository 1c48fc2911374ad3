#include "equisched/ip_engine.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include <json.hpp>

namespace equisched::ip {

namespace {

using Wide = __int128;

Wide floor_div(Wide a, Wide b) {
    Wide q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

Wide ceil_div(Wide a, Wide b) { return -floor_div(-a, b); }

Integer clamp_to_integer(Wide v) {
    constexpr Wide lo = std::numeric_limits<Integer>::min();
    constexpr Wide hi = std::numeric_limits<Integer>::max();
    return static_cast<Integer>(std::clamp(v, lo, hi));
}

// Every constraint in the form  sum coeff * x <= rhs.
struct Row {
    std::vector<Term> terms;
    Integer rhs = 0;
};

struct GuardHit {};

class Solver {
  public:
    Solver(const ConstraintSystem &sys, std::uint64_t guard) : sys_(sys), guard_(guard) {
        for (const Constraint &c : sys.constraints()) {
            if (c.relation != Relation::greater_equal) rows_.push_back({c.terms, c.rhs});
            if (c.relation != Relation::less_equal) {
                Row flipped{c.terms, -c.rhs};
                for (Term &t : flipped.terms) t.coeff = -t.coeff;
                rows_.push_back(std::move(flipped));
            }
        }
        rows_of_.resize(sys.num_variables());
        for (int r = 0; r < static_cast<int>(rows_.size()); ++r)
            for (const Term &t : rows_[r].terms) rows_of_[t.var].push_back(r);
        queued_.assign(rows_.size(), 0);
    }

    SolveResult run() {
        SolveResult result;
        std::vector<Integer> lo, hi;
        for (const Variable &v : sys_.variables()) {
            lo.push_back(v.lower);
            hi.push_back(v.upper);
        }
        std::vector<int> all(rows_.size());
        for (int r = 0; r < static_cast<int>(rows_.size()); ++r) all[r] = r;
        try {
            if (propagate(lo, hi, all) && search(lo, hi)) {
                result.status = Status::feasible;
                result.assignment = Assignment{solution_};
            } else {
                result.status = Status::infeasible;
            }
        } catch (const GuardHit &) {
            result.status = Status::guard_exceeded;
        }
        result.nodes = nodes_;
        return result;
    }

  private:
    bool search(std::vector<Integer> &lo, std::vector<Integer> &hi) {
        int var = 0;
        while (var < static_cast<int>(lo.size()) && lo[var] == hi[var]) ++var;
        if (var == static_cast<int>(lo.size())) {
            solution_ = lo;
            if (!check(sys_, Assignment{solution_})) throw std::logic_error("propagation accepted a violating point");
            return true;
        }
        for (Integer value = lo[var]; value <= hi[var]; ++value) {
            if (++nodes_ > guard_) throw GuardHit{};
            std::vector<Integer> child_lo = lo, child_hi = hi;
            child_lo[var] = child_hi[var] = value;
            if (propagate(child_lo, child_hi, rows_of_[var]) && search(child_lo, child_hi)) return true;
            if (value == std::numeric_limits<Integer>::max()) break;
        }
        return false;
    }

    // Interval propagation to a fixpoint. Returns false on an empty box.
    bool propagate(std::vector<Integer> &lo, std::vector<Integer> &hi, const std::vector<int> &seed) {
        std::vector<int> queue;
        for (int r : seed) {
            if (!queued_[r]) {
                queued_[r] = 1;
                queue.push_back(r);
            }
        }
        bool ok = true;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const int r = queue[head];
            queued_[r] = 0;
            if (!ok) continue;
            const Row &row = rows_[r];
            Wide min_activity = 0;
            for (const Term &t : row.terms)
                min_activity += t.coeff > 0 ? Wide(t.coeff) * lo[t.var] : Wide(t.coeff) * hi[t.var];
            if (min_activity > row.rhs) {
                ok = false;
                continue;
            }
            for (const Term &t : row.terms) {
                const Wide own = t.coeff > 0 ? Wide(t.coeff) * lo[t.var] : Wide(t.coeff) * hi[t.var];
                const Wide slack = Wide(row.rhs) - (min_activity - own);
                bool changed = false;
                if (t.coeff > 0) {
                    const Integer bound = clamp_to_integer(floor_div(slack, t.coeff));
                    if (bound < hi[t.var]) {
                        hi[t.var] = bound;
                        changed = true;
                    }
                } else {
                    const Integer bound = clamp_to_integer(ceil_div(slack, t.coeff));
                    if (bound > lo[t.var]) {
                        lo[t.var] = bound;
                        changed = true;
                    }
                }
                if (lo[t.var] > hi[t.var]) {
                    ok = false;
                    break;
                }
                if (changed) {
                    for (int other : rows_of_[t.var]) {
                        if (!queued_[other]) {
                            queued_[other] = 1;
                            queue.push_back(other);
                        }
                    }
                }
            }
        }
        return ok;
    }

    const ConstraintSystem &sys_;
    std::uint64_t guard_;
    std::vector<Row> rows_;
    std::vector<std::vector<int>> rows_of_;
    std::vector<char> queued_;
    std::vector<Integer> solution_;
    std::uint64_t nodes_ = 0;
};

const char *relation_symbol(Relation rel) {
    switch (rel) {
        case Relation::less_equal: return "<=";
        case Relation::equal: return "=";
        case Relation::greater_equal: return ">=";
    }
    return "?";
}

}  // namespace

int ConstraintSystem::add_variable(std::string name, Integer lower, Integer upper) {
    if (lower > upper) throw std::invalid_argument("variable " + name + " has an empty box");
    const int index = num_variables();
    if (!by_name_.emplace(name, index).second) throw std::invalid_argument("duplicate variable name " + name);
    vars_.push_back({std::move(name), lower, upper});
    return index;
}

void ConstraintSystem::add_constraint(std::vector<Term> terms, Relation relation, Integer rhs, std::string tag) {
    std::map<int, Integer> merged;
    for (const Term &t : terms) {
        if (t.var < 0 || t.var >= num_variables()) {
            throw std::invalid_argument("constraint " + tag + " references undeclared variable " +
                                        std::to_string(t.var));
        }
        merged[t.var] += t.coeff;
    }
    Constraint c{{}, relation, rhs, std::move(tag)};
    for (const auto &[var, coeff] : merged)
        if (coeff != 0) c.terms.push_back({var, coeff});
    constraints_.push_back(std::move(c));
}

std::optional<int> ConstraintSystem::find(std::string_view name) const {
    const auto it = by_name_.find(std::string(name));
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

SparseMatrix ConstraintSystem::matrix() const {
    std::vector<Eigen::Triplet<Integer>> triplets;
    for (int r = 0; r < num_constraints(); ++r)
        for (const Term &t : constraints_[r].terms) triplets.emplace_back(r, t.var, t.coeff);
    SparseMatrix a(num_constraints(), num_variables());
    a.setFromTriplets(triplets.begin(), triplets.end());
    return a;
}

IntegerVector ConstraintSystem::rhs() const {
    IntegerVector b(num_constraints());
    for (int r = 0; r < num_constraints(); ++r) b(r) = constraints_[r].rhs;
    return b;
}

std::string ConstraintSystem::to_json() const {
    nlohmann::ordered_json doc;
    auto &vars = doc["variables"] = nlohmann::ordered_json::array();
    for (const Variable &v : vars_) vars.push_back({{"name", v.name}, {"lower", v.lower}, {"upper", v.upper}});
    auto &rows = doc["constraints"] = nlohmann::ordered_json::array();
    for (const Constraint &c : constraints_) {
        nlohmann::ordered_json terms = nlohmann::ordered_json::array();
        for (const Term &t : c.terms) terms.push_back({{"var", vars_[t.var].name}, {"coeff", t.coeff}});
        rows.push_back({{"tag", c.tag}, {"terms", terms}, {"relation", relation_symbol(c.relation)}, {"rhs", c.rhs}});
    }
    return doc.dump(2) + "\n";
}

Integer Assignment::value(const ConstraintSystem &sys, std::string_view name) const {
    const auto index = sys.find(name);
    if (!index) throw std::out_of_range("unknown variable " + std::string(name));
    return values.at(*index);
}

bool check(const ConstraintSystem &sys, const Assignment &a) {
    if (static_cast<int>(a.values.size()) != sys.num_variables()) {
        throw std::invalid_argument("assignment has " + std::to_string(a.values.size()) + " values, system has " +
                                    std::to_string(sys.num_variables()) + " variables");
    }
    for (int v = 0; v < sys.num_variables(); ++v) {
        if (a[v] < sys.variables()[v].lower || a[v] > sys.variables()[v].upper) return false;
    }
    const IntegerVector x = Eigen::Map<const IntegerVector>(a.values.data(), sys.num_variables());
    const IntegerVector activity = sys.matrix() * x;
    for (int r = 0; r < sys.num_constraints(); ++r) {
        const Integer lhs = activity(r);
        const Integer rhs = sys.constraints()[r].rhs;
        switch (sys.constraints()[r].relation) {
            case Relation::less_equal:
                if (lhs > rhs) return false;
                break;
            case Relation::equal:
                if (lhs != rhs) return false;
                break;
            case Relation::greater_equal:
                if (lhs < rhs) return false;
                break;
        }
    }
    return true;
}

SolveResult solve_feasibility(const ConstraintSystem &sys, std::uint64_t node_guard) {
    return Solver(sys, node_guard).run();
}

std::string_view to_string(Status status) {
    switch (status) {
        case Status::feasible: return "feasible";
        case Status::infeasible: return "infeasible";
        case Status::guard_exceeded: return "guard_exceeded";
    }
    return "unknown";
}

}  // namespace equisched::ip
