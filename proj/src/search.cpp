#include <forbconf/error.hpp>
#include <forbconf/search.hpp>
#include <forbconf/structure.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <sstream>
#include <thread>

namespace forbconf {

namespace {

constexpr std::size_t kMaxSearchRows = 20;
constexpr std::uint64_t kNoBranch = 0xFFFFFFFFULL;

// Total order on (value, branch): larger value wins, then the earlier branch.
std::uint64_t rank_key(std::size_t value, std::uint64_t branch)
{
    return (static_cast<std::uint64_t>(value) << 32) | (kNoBranch - branch);
}

// Containment of one forbidden F in a growing matrix, tracked per ordered
// tuple of k distinct rows (k = rows of F): counts of every k-bit pattern the
// matrix shows on the tuple, and how many patterns still fall short of F.
// F < A iff some tuple has no shortfall. Tuples that differ by a row
// symmetry of F are kept once.
class TupleIndex {
public:
    static constexpr std::size_t kMaxCells = std::size_t{1} << 22;

    // Empty optional when the tables would be too large.
    static std::optional<TupleIndex> build(const BinMatrix & f, std::size_t m)
    {
        const std::size_t k = f.rows();
        if (k == 0 || k > 16)
            return std::nullopt;
        TupleIndex x;
        x.k_ = k;
        x.need_.assign(std::size_t{1} << k, 0);
        for (const auto & e : f.entries())
            x.need_[pattern_of(e.column, k)] += static_cast<std::uint32_t>(e.count);
        for (auto n : x.need_)
            x.initial_deficit_ += n > 0 ? 1 : 0;
        if (k > m)
            return x;

        std::size_t tuples = 1;
        for (std::size_t i = 0; i < k; ++i) {
            tuples *= m - i;
            if (tuples << k > kMaxCells * 8)
                return std::nullopt;
        }
        const auto symmetries = row_symmetries(f, x.need_);
        std::vector<std::uint8_t> tuple(k), image(k);
        std::vector<bool> used(m, false);
        auto emit = [&] {
            for (const auto & sigma : symmetries) {
                for (std::size_t i = 0; i < k; ++i)
                    image[i] = tuple[sigma[i]];
                if (image < tuple)
                    return;
            }
            x.rows_.insert(x.rows_.end(), tuple.begin(), tuple.end());
        };
        auto rec = [&](auto & self, std::size_t i) -> void {
            if (i == k) {
                emit();
                return;
            }
            for (std::size_t r = 0; r < m; ++r) {
                if (used[r])
                    continue;
                used[r] = true;
                tuple[i] = static_cast<std::uint8_t>(r);
                self(self, i + 1);
                used[r] = false;
            }
        };
        rec(rec, 0);
        x.tuples_ = k == 0 ? 0 : x.rows_.size() / k;
        if (x.tuples_ << k > kMaxCells)
            return std::nullopt;
        return x;
    }

    struct State {
        std::vector<std::uint32_t> count;  // (tuple, pattern)
        std::vector<std::uint32_t> deficit;
    };

    [[nodiscard]] State fresh() const
    {
        return {std::vector<std::uint32_t>(tuples_ << k_, 0),
            std::vector<std::uint32_t>(tuples_, initial_deficit_)};
    }

    void add(State & st, std::uint32_t v, std::size_t m) const
    {
        for (std::size_t q = 0; q < tuples_; ++q) {
            const auto p = project(q, v, m);
            auto & c = st.count[(q << k_) + p];
            if (c + 1 == need_[p])
                --st.deficit[q];
            ++c;
        }
    }

    void remove(State & st, std::uint32_t v, std::size_t m) const
    {
        for (std::size_t q = 0; q < tuples_; ++q) {
            const auto p = project(q, v, m);
            auto & c = st.count[(q << k_) + p];
            if (c == need_[p])
                ++st.deficit[q];
            --c;
        }
    }

    // Whether adding column v would complete a copy of F.
    [[nodiscard]] bool completes(const State & st, std::uint32_t v, std::size_t m) const
    {
        for (std::size_t q = 0; q < tuples_; ++q) {
            if (st.deficit[q] > 1)
                continue;
            const auto p = project(q, v, m);
            if (st.deficit[q] == 0 || st.count[(q << k_) + p] + 1 == need_[p])
                return true;
        }
        return false;
    }

private:
    std::size_t k_ = 0;
    std::size_t tuples_ = 0;
    std::uint32_t initial_deficit_ = 0;
    std::vector<std::uint32_t> need_;
    std::vector<std::uint8_t> rows_;

    static std::size_t pattern_of(const Column & c, std::size_t k)
    {
        std::size_t p = 0;
        for (std::size_t i = 0; i < k; ++i)
            p |= (c[i] ? std::size_t{1} : 0) << i;
        return p;
    }

    [[nodiscard]] std::size_t project(std::size_t q, std::uint32_t v, std::size_t m) const
    {
        const std::uint8_t * r = rows_.data() + q * k_;
        std::size_t p = 0;
        for (std::size_t i = 0; i < k_; ++i)
            p |= static_cast<std::size_t>((v >> (m - 1 - r[i])) & 1U) << i;
        return p;
    }

    // Row permutations sigma of F (row i goes to sigma[i]) leaving its column
    // multiset unchanged; only searched for k <= 8, identity otherwise.
    static std::vector<std::vector<std::uint8_t>> row_symmetries(
        const BinMatrix & f, const std::vector<std::uint32_t> & need)
    {
        const std::size_t k = f.rows();
        std::vector<std::uint8_t> sigma(k);
        for (std::size_t i = 0; i < k; ++i)
            sigma[i] = static_cast<std::uint8_t>(i);
        if (k > 8)
            return {sigma};
        std::vector<std::vector<std::uint8_t>> out;
        do {
            bool same = true;
            for (std::size_t p = 0; p < need.size() && same; ++p) {
                std::size_t image = 0;
                for (std::size_t i = 0; i < k; ++i)
                    image |= ((p >> i) & 1U) << sigma[i];
                same = need[p] == need[image];
            }
            if (same)
                out.push_back(sigma);
        } while (std::next_permutation(sigma.begin(), sigma.end()));
        return out;
    }
};

class ForbSearch {
public:
    // Best: the lexicographically least maximum. AllAt: every member of size target.
    enum class Mode { Best, AllAt };

    ForbSearch(const SearchProblem & p, std::size_t limit)
        : m_(p.m), t_(p.problem.t), max_nodes_(p.options.max_nodes), limit_(limit)
    {
        p.problem.validate();
        if (p.m == 0)
            throw Error("search needs m >= 1");
        if (p.m > kMaxSearchRows)
            throw Error("exact search is limited to m <= 20");
        if (p.options.max_nodes == 0)
            throw Error("node limit must be positive");
        for (const auto & f : p.problem.family) {
            patterns_.emplace_back(f);
            indexes_.push_back(TupleIndex::build(f, m_));
            all_indexed_ = all_indexed_ && indexes_.back().has_value();
        }
        const std::uint64_t n = std::uint64_t{1} << m_;
        candidates_.reserve(n);
        for (std::uint64_t v = 0; v < n; ++v)
            candidates_.push_back(Column::from_index(m_, v));
        threads_ = p.options.threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : p.options.threads;
    }

    // Returns false if the node limit was hit.
    bool run(Mode mode, std::size_t target = 0)
    {
        mode_ = mode;
        target_ = target;
        best_key_.store(0);
        best_entries_.clear();
        optima_.clear();

        Worker root(*this);
        if (root_.empty()) {
            std::vector<std::uint32_t> all(candidates_.size());
            for (std::uint32_t c = 0; c < all.size(); ++c)
                all[c] = c;
            root_ = root.filter(all);
        }
        std::vector<std::size_t> suffix(root_.size() + 1, 0);
        for (std::size_t j = root_.size(); j-- > 0;)
            suffix[j] = suffix[j + 1] + t_;

        nodes_.fetch_add(1);
        offer(0, kNoBranch, {});

        std::atomic<std::size_t> next{0};
        auto body = [&] {
            Worker w(*this);
            for (std::size_t b = next.fetch_add(1); b < root_.size() && !stop_.load(); b = next.fetch_add(1)) {
                if (prunable(suffix[b], b))
                    continue;
                w.branch = b;
                w.push(root_[b]);
                auto child = w.filter(std::span(root_).subspan(b));
                w.dfs(child, 1);
                w.pop();
            }
        };
        const std::size_t threads = mode_ == Mode::AllAt ? 1 : threads_;
        if (threads <= 1) {
            body();
        } else {
            std::vector<std::jthread> pool;
            for (std::size_t i = 0; i < threads; ++i)
                pool.emplace_back(body);
        }
        return !stop_.load();
    }

    [[nodiscard]] std::uint64_t nodes() const { return nodes_.load(); }
    [[nodiscard]] std::size_t best_value() const { return static_cast<std::size_t>(best_key_.load() >> 32); }
    [[nodiscard]] BinMatrix best_witness() const { return BinMatrix(m_, best_entries_); }
    [[nodiscard]] std::vector<BinMatrix> optima() const
    {
        std::vector<BinMatrix> out;
        for (const auto & e : optima_)
            out.emplace_back(m_, e);
        return out;
    }

private:
    struct Worker {
        ForbSearch & s;
        std::vector<BinMatrix::Entry> work;
        std::uint64_t branch = kNoBranch;

        std::vector<TupleIndex::State> states;

        explicit Worker(ForbSearch & search) : s(search)
        {
            for (const auto & x : s.indexes_)
                states.push_back(x ? x->fresh() : TupleIndex::State{});
        }

        void push(std::uint32_t c)
        {
            for (std::size_t i = 0; i < states.size(); ++i)
                if (s.indexes_[i])
                    s.indexes_[i]->add(states[i], c, s.m_);
            const Column & col = s.candidates_[c];
            if (!work.empty() && work.back().column == col)
                ++work.back().count;
            else
                work.push_back({col, 1});
        }

        void pop()
        {
            const auto c = static_cast<std::uint32_t>(work.back().column.words()[0] >> (64 - s.m_));
            for (std::size_t i = 0; i < states.size(); ++i)
                if (s.indexes_[i])
                    s.indexes_[i]->remove(states[i], c, s.m_);
            if (--work.back().count == 0)
                work.pop_back();
        }

        [[nodiscard]] std::size_t count_of(std::uint32_t c) const
        {
            return (!work.empty() && work.back().column == s.candidates_[c]) ? work.back().count : 0;
        }

        // Adding c keeps the matrix free of every forbidden configuration.
        bool addable(std::uint32_t c)
        {
            for (std::size_t i = 0; i < states.size(); ++i)
                if (s.indexes_[i] && s.indexes_[i]->completes(states[i], c, s.m_))
                    return false;
            if (s.all_indexed_)
                return true;
            bool ok = true;
            push(c);
            for (std::size_t i = 0; i < states.size() && ok; ++i)
                if (!s.indexes_[i] && s.patterns_[i].find_using(s.m_, work, s.candidates_[c]))
                    ok = false;
            pop();
            return ok;
        }

        // Candidates from `from` (all >= the last column in work) that can still be added.
        std::vector<std::uint32_t> filter(std::span<const std::uint32_t> from)
        {
            std::vector<std::uint32_t> out;
            out.reserve(from.size());
            for (auto c : from)
                if (count_of(c) < s.t_ && addable(c))
                    out.push_back(c);
            return out;
        }

        void dfs(const std::vector<std::uint32_t> & feasible, std::size_t size)
        {
            if (s.stop_.load(std::memory_order_relaxed))
                return;
            if (s.nodes_.fetch_add(1, std::memory_order_relaxed) + 1 > s.max_nodes_) {
                s.stop_.store(true);
                return;
            }
            if (s.offer(size, branch, work))
                return;

            std::vector<std::size_t> suffix(feasible.size() + 1, 0);
            for (std::size_t j = feasible.size(); j-- > 0;)
                suffix[j] = suffix[j + 1] + (s.t_ - count_of(feasible[j]));

            for (std::size_t idx = 0; idx < feasible.size(); ++idx) {
                if (s.prunable(size + suffix[idx], branch))
                    return;
                push(feasible[idx]);
                auto child = filter(std::span(feasible).subspan(idx));
                dfs(child, size + 1);
                pop();
                if (s.stop_.load(std::memory_order_relaxed))
                    return;
            }
        }
    };

    std::size_t m_;
    std::size_t t_;
    std::uint64_t max_nodes_;
    std::size_t limit_;
    std::size_t threads_ = 1;
    Mode mode_ = Mode::Best;
    std::size_t target_ = 0;
    std::vector<Pattern> patterns_;
    std::vector<std::optional<TupleIndex>> indexes_;
    bool all_indexed_ = true;
    std::vector<Column> candidates_;
    std::vector<std::uint32_t> root_;

    std::atomic<std::uint64_t> best_key_{0};
    std::atomic<std::uint64_t> nodes_{0};
    std::atomic<bool> stop_{false};
    std::mutex mutex_;
    std::vector<BinMatrix::Entry> best_entries_;
    std::vector<std::vector<BinMatrix::Entry>> optima_;

    [[nodiscard]] bool prunable(std::size_t bound, std::uint64_t branch) const
    {
        switch (mode_) {
        case Mode::Best:
            return rank_key(bound, branch) <= best_key_.load(std::memory_order_relaxed);
        case Mode::AllAt:
            return bound < target_;
        }
        return false;
    }

    // Records the current matrix; true when the node needs no children.
    bool offer(std::size_t size, std::uint64_t branch, const std::vector<BinMatrix::Entry> & work)
    {
        switch (mode_) {
        case Mode::Best: {
            const auto key = rank_key(size, branch);
            if (key <= best_key_.load())
                return false;
            std::lock_guard lock(mutex_);
            if (key > best_key_.load()) {
                best_key_.store(key);
                best_entries_ = work;
            }
            return false;
        }
        case Mode::AllAt:
            if (size != target_)
                return false;
            if (optima_.size() >= limit_)
                throw Error("more than " + std::to_string(limit_) + " optimal witnesses");
            optima_.push_back(work);
            return true;
        }
        return false;
    }
};

}  // namespace

SearchResult forb_exact(const SearchProblem & p)
{
    ForbSearch search(p, 0);
    SearchResult r;
    r.complete = search.run(ForbSearch::Mode::Best);
    r.value = search.best_value();
    r.witness = search.best_witness();
    r.nodes = search.nodes();
    return r;
}

OptimaResult all_optimal_witnesses(const SearchProblem & p, std::size_t limit)
{
    ForbSearch search(p, limit);
    OptimaResult r;
    if (!search.run(ForbSearch::Mode::Best)) {
        r.value = search.best_value();
        r.witnesses.push_back(search.best_witness());
        return r;
    }
    r.value = search.best_value();
    r.complete = search.run(ForbSearch::Mode::AllAt, r.value);
    r.witnesses = search.optima();
    return r;
}

std::uint64_t sauer_formula(std::size_t m, std::size_t k)
{
    // Pascal rows, saturating just above the 64-bit range.
    const unsigned __int128 over = static_cast<unsigned __int128>(UINT64_MAX) + 1;
    std::vector<unsigned __int128> row(k + 1, 0);
    row[0] = 1;
    for (std::size_t n = 1; n <= m; ++n)
        for (std::size_t j = std::min(n, k); j >= 1; --j)
            row[j] = std::min(over, row[j] + row[j - 1]);
    unsigned __int128 sum = 0;
    for (std::size_t j = 0; j + 1 <= k && j <= m; ++j)
        sum += row[j];
    if (sum > UINT64_MAX)
        throw Error("Sauer bound overflows 64 bits");
    return static_cast<std::uint64_t>(sum);
}

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::Pass:
        return "pass";
    case Verdict::Fail:
        return "fail";
    case Verdict::Inconclusive:
        return "inconclusive";
    }
    return "?";
}

namespace {

BoundTerm term(std::string name, const SearchResult & r)
{
    return {std::move(name), r.value, r.complete};
}

InequalityInstance compare(std::string statement, const BoundTerm & lhs, std::uint64_t rhs, bool rhs_complete)
{
    InequalityInstance c{std::move(statement), lhs.value, rhs, Verdict::Inconclusive};
    if (lhs.complete && rhs_complete)
        c.verdict = lhs.value <= rhs ? Verdict::Pass : Verdict::Fail;
    return c;
}

Verdict overall(const std::vector<InequalityInstance> & checks)
{
    Verdict v = Verdict::Pass;
    for (const auto & c : checks) {
        if (c.verdict == Verdict::Fail)
            return Verdict::Fail;
        if (c.verdict == Verdict::Inconclusive)
            v = Verdict::Inconclusive;
    }
    return v;
}

SearchResult run(std::size_t m, const std::vector<BinMatrix> & family, std::size_t t, const SearchOptions & options)
{
    return forb_exact(SearchProblem{m, ConfigProblem{family, t}, options});
}

}  // namespace

BoundCheckReport sandwich_check(
    std::size_t m, const std::vector<BinMatrix> & family, std::size_t t, const SearchOptions & options)
{
    if (t == 0)
        throw Error("multiplicity bound t must be >= 1");
    BoundCheckReport report;
    const auto simple = term("forb(m,F)", run(m, family, 1, options));
    const auto multi = t == 1 ? BoundTerm{"forb(m,F,t)", simple.value, simple.complete}
                              : term("forb(m,F,t)", run(m, family, t, options));
    report.terms = {simple, multi};
    report.checks.push_back(compare("forb(m,F) <= forb(m,F,t)", simple, multi.value, multi.complete));
    report.checks.push_back(compare("forb(m,F,t) <= t*forb(m,F)", multi, t * simple.value, simple.complete));
    report.verdict = overall(report.checks);
    return report;
}

BoundCheckReport induction_check(
    std::size_t m, const std::vector<BinMatrix> & family, std::size_t t, const SearchOptions & options)
{
    if (t < 2)
        throw Error("induction check needs t >= 2");
    if (m < 2)
        throw Error("induction check needs m >= 2 (a row must be split off)");
    const auto children = inductive_children(ConfigProblem{family, t});

    BoundCheckReport report;
    const auto lhs = term("forb(m,F,t-1)", run(m, family, t - 1, options));
    const auto prev = term("forb(m-1,F,t-1)", run(m - 1, family, t - 1, options));
    const auto kids = term("forb(m-1,G)", run(m - 1, children.family, 1, options));
    report.terms = {lhs, prev, kids};
    report.checks.push_back(compare("forb(m,F,t-1) <= forb(m-1,F,t-1) + (t-1)*forb(m-1,G)", lhs,
        prev.value + (t - 1) * kids.value, prev.complete && kids.complete));
    report.verdict = overall(report.checks);
    return report;
}

ExponentEstimate exponent_estimate(std::span<const std::size_t> ms, std::span<const std::uint64_t> values)
{
    if (ms.size() != values.size())
        throw Error("exponent estimate needs one value per m");
    if (ms.size() < 3)
        throw Error("exponent estimate needs at least 3 points");
    for (std::size_t i = 0; i < ms.size(); ++i) {
        if (ms[i] == 0 || values[i] == 0)
            throw Error("exponent estimate needs positive m and values");
        if (i > 0 && ms[i] <= ms[i - 1])
            throw Error("m values must be strictly ascending");
    }

    ExponentEstimate e;
    const double n = static_cast<double>(ms.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < ms.size(); ++i) {
        const double x = std::log(static_cast<double>(ms[i]));
        const double y = std::log(static_cast<double>(values[i]));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    e.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);

    // Finite differences assume unit spacing in m.
    bool unit_spacing = true;
    for (std::size_t i = 1; i < ms.size(); ++i)
        unit_spacing = unit_spacing && ms[i] == ms[i - 1] + 1;

    std::vector<__int128> diff(values.begin(), values.end());
    e.saturated = true;
    e.degree = ms.size() - 1;
    for (std::size_t d = 0; d + 1 < ms.size(); ++d) {
        for (std::size_t i = 0; i + 1 < diff.size(); ++i)
            diff[i] = diff[i + 1] - diff[i];
        diff.pop_back();
        if (std::all_of(diff.begin(), diff.end(), [](__int128 v) { return v == 0; })) {
            e.degree = d;
            e.saturated = false;
            break;
        }
    }

    std::ostringstream os;
    os << "m=" << ms.front() << ".." << ms.back() << ": ";
    if (!unit_spacing)
        os << "m values are not consecutive, finite-difference degree is not meaningful; ";
    if (e.saturated)
        os << "no finite differences vanished, degree >= " << e.degree << " (lower bound only)";
    else
        os << "order-" << (e.degree + 1) << " differences vanish, values fit a degree-" << e.degree
           << " polynomial";
    os << "; log-log slope " << e.slope << "; finite-m data only";
    e.diagnosis = os.str();
    return e;
}

ExponentEstimate exponent_estimate(
    const ConfigProblem & problem, std::span<const std::size_t> ms, const SearchOptions & options)
{
    std::vector<std::uint64_t> values;
    for (auto m : ms) {
        const auto r = forb_exact(SearchProblem{m, problem, options});
        if (!r.complete)
            throw Error("search for m=" + std::to_string(m) + " did not complete");
        values.push_back(r.value);
    }
    return exponent_estimate(ms, values);
}

}  // namespace forbconf
