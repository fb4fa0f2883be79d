#include <forbconf/constructions.hpp>
#include <forbconf/containment.hpp>
#include <forbconf/error.hpp>

#include <algorithm>

namespace forbconf {

namespace {

std::string_view factor_name(Factor f)
{
    switch (f) {
    case Factor::I:
        return "I";
    case Factor::Ic:
        return "Ic";
    case Factor::T:
        return "T";
    }
    return "?";
}

StandardKind factor_kind(Factor f)
{
    switch (f) {
    case Factor::I:
        return StandardKind::Identity;
    case Factor::Ic:
        return StandardKind::IdentityComplement;
    case Factor::T:
        return StandardKind::Triangular;
    }
    return StandardKind::Identity;
}

// The i-th of the 3^p factor choices, first factor most significant, I < Ic < T.
std::vector<Factor> choice(std::size_t p, std::size_t index)
{
    std::vector<Factor> out(p);
    for (std::size_t k = p; k-- > 0;) {
        out[k] = static_cast<Factor>(index % 3);
        index /= 3;
    }
    return out;
}

struct Decision {
    bool decided = false;
    std::size_t x = 0;
    std::optional<ProductSpec> avoiding;
};

Decision decide_at(const Pattern & f, std::size_t p_max, std::size_t block)
{
    Decision d;
    std::optional<ProductSpec> previous;
    std::size_t choices = 1;
    for (std::size_t p = 1; p <= p_max; ++p) {
        choices *= 3;
        std::optional<ProductSpec> failing;
        for (std::size_t i = 0; i < choices && !failing; ++i) {
            ProductSpec spec{choice(p, i), block};
            if (!f.find_in(realize(spec)))
                failing = std::move(spec);
        }
        if (!failing) {
            d.decided = true;
            d.x = p;
            d.avoiding = std::move(previous);
            return d;
        }
        previous = std::move(failing);
    }
    return d;
}

}  // namespace

std::string ProductSpec::to_string() const
{
    std::string s;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i > 0)
            s += 'x';
        s += factor_name(factors[i]);
    }
    return s + "@" + std::to_string(block);
}

ProductSpec ProductSpec::parse(std::string_view text)
{
    const auto at = text.find('@');
    if (at == std::string_view::npos)
        throw Error("product spec '" + std::string(text) + "' lacks '@block'");
    ProductSpec spec;
    const auto block = text.substr(at + 1);
    if (block.empty() || !std::all_of(block.begin(), block.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw Error("bad block size in product spec '" + std::string(text) + "'");
    spec.block = std::stoul(std::string(block));
    if (spec.block == 0)
        throw Error("block size must be >= 1");

    std::string_view rest = text.substr(0, at);
    while (true) {
        const auto x = rest.find('x');
        const auto tok = rest.substr(0, x);
        if (tok == "I")
            spec.factors.push_back(Factor::I);
        else if (tok == "Ic")
            spec.factors.push_back(Factor::Ic);
        else if (tok == "T")
            spec.factors.push_back(Factor::T);
        else
            throw Error("unknown factor '" + std::string(tok) + "' in product spec");
        if (x == std::string_view::npos)
            break;
        rest = rest.substr(x + 1);
    }
    return spec;
}

BinMatrix realize(const ProductSpec & spec)
{
    if (spec.block == 0)
        throw Error("block size must be >= 1");
    if (spec.factors.empty())
        throw Error("product spec has no factors");
    std::vector<BinMatrix> parts;
    parts.reserve(spec.factors.size());
    for (auto f : spec.factors)
        parts.push_back(build_standard(factor_kind(f), spec.block));
    return product(parts);
}

std::size_t x_value_block(const BinMatrix & f)
{
    return std::max(f.rows() * f.cols() + 1, f.rows() + 1);
}

XValueResult x_value(const BinMatrix & f, std::size_t p_max)
{
    if (f.empty())
        throw Error("empty configuration");
    if (p_max == 0)
        throw Error("p_max must be >= 1");
    const Pattern pattern(f);
    const std::size_t block = x_value_block(f);

    const Decision main = decide_at(pattern, p_max, block);
    const Decision check = decide_at(pattern, p_max, block + 1);

    XValueResult r;
    r.decided = main.decided;
    r.x = main.x;
    r.avoiding_spec = main.avoiding;
    r.block_used = block;
    r.m_used = main.decided ? main.x * block : p_max * block;
    r.stable = main.decided == check.decided && main.x == check.x;
    return r;
}

std::size_t predicted_exponent(const BinMatrix & f, std::size_t p_max)
{
    const auto r = x_value(f, p_max);
    if (!r.decided)
        throw Error("X(F) undecided for p <= " + std::to_string(p_max));
    return r.x - 1;
}

ProductSpec table1_construction(const FSpec & spec, std::size_t block)
{
    if (spec.rows() == 0)
        throw Error("empty configuration");
    if (spec.t == 0)
        throw Error("replication t must be positive");
    if (spec.a < spec.d || spec.b < spec.c)
        throw Error("table construction needs a >= d and b >= c; normalize first");

    const bool multi = spec.t >= 2;
    ProductSpec out;
    out.block = block;
    if (spec.b > spec.c || (spec.a >= 1 && spec.b >= 1)) {
        const std::size_t p = multi ? spec.a + spec.b : spec.a + spec.b - 1;
        out.factors.assign(p, Factor::I);
    } else if (spec.b == 0) {
        out.factors.assign(spec.a, Factor::I);
    } else {
        // F_{0,b,b,0}
        out.factors.assign(spec.b - 1, Factor::I);
        out.factors.push_back(Factor::T);
    }
    if (out.factors.empty())
        throw Error("no product construction: forb is bounded by a constant for this configuration");
    if (block == 0)
        throw Error("block size must be >= 1");
    return out;
}

}  // namespace forbconf
