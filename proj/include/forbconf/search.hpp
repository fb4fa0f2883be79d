#pragma once

#include <forbconf/bin_matrix.hpp>
#include <forbconf/containment.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace forbconf {

struct SearchOptions {
    /// Search stops with complete = false after this many nodes.
    std::uint64_t max_nodes = std::uint64_t{1} << 40;
    /// 0 picks std::thread::hardware_concurrency().
    std::size_t threads = 0;
};

struct SearchProblem {
    std::size_t m = 1;
    ConfigProblem problem;
    SearchOptions options;
};

struct SearchResult {
    std::size_t value = 0;
    BinMatrix witness;
    std::uint64_t nodes = 0;
    /// True iff value is exactly forb(m, family, t).
    bool complete = false;
};

/// forb(m, family, t) by depth-first search over column multisets in
/// nondecreasing canonical order. A branch is cut once its size plus the
/// remaining capacity of still-addable columns cannot beat the incumbent; a
/// column stops being addable as soon as adding it would create a forbidden
/// configuration. The witness is the lexicographically least maximum,
/// independent of thread count.
SearchResult forb_exact(const SearchProblem & p);

/// Every maximum-size member of Avoid(m, family, t), in search order
/// (lexicographic). Sequential. Throws if more than `limit` maxima exist.
struct OptimaResult {
    std::size_t value = 0;
    std::vector<BinMatrix> witnesses;
    bool complete = false;
};
OptimaResult all_optimal_witnesses(const SearchProblem & p, std::size_t limit = 100000);

/// C(m, k-1) + C(m, k-2) + ... + C(m, 0); 0 for k = 0. Throws on 64-bit overflow.
std::uint64_t sauer_formula(std::size_t m, std::size_t k);

enum class Verdict { Pass, Fail, Inconclusive };

std::string to_string(Verdict v);

struct BoundTerm {
    std::string name;
    std::uint64_t value = 0;
    bool complete = false;
};

struct InequalityInstance {
    std::string statement;
    std::uint64_t lhs = 0;
    std::uint64_t rhs = 0;
    Verdict verdict = Verdict::Inconclusive;
};

struct BoundCheckReport {
    std::vector<BoundTerm> terms;
    std::vector<InequalityInstance> checks;
    Verdict verdict = Verdict::Inconclusive;
};

/// forb(m,F) <= forb(m,F,t) <= t * forb(m,F).
BoundCheckReport sandwich_check(
    std::size_t m, const std::vector<BinMatrix> & family, std::size_t t, const SearchOptions & options = {});

/// forb(m,F,t-1) <= forb(m-1,F,t-1) + (t-1) * forb(m-1, inductive_children(F)).
/// Requires m >= 2 and t >= 2.
BoundCheckReport induction_check(
    std::size_t m, const std::vector<BinMatrix> & family, std::size_t t, const SearchOptions & options = {});

struct ExponentEstimate {
    /// Least-squares slope of log f against log m.
    double slope = 0;
    /// Least d whose (d+1)-th finite differences all vanish.
    std::size_t degree = 0;
    /// True when the points ran out before any differences vanished; degree
    /// is then only a lower bound.
    bool saturated = false;
    std::string diagnosis;
};

/// Needs at least 3 points, ascending m, positive values.
ExponentEstimate exponent_estimate(std::span<const std::size_t> ms, std::span<const std::uint64_t> values);

/// Computes forb(m, family, t) exactly for every m and estimates. Throws if a
/// search is incomplete.
ExponentEstimate exponent_estimate(
    const ConfigProblem & problem, std::span<const std::size_t> ms, const SearchOptions & options = {});

}  // namespace forbconf
