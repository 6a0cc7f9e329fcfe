#include <algorithm>
#include <numeric>
#include <ostream>
#include <string>

#include "lca/measure.hpp"
#include "measure_detail.hpp"

namespace lca {

namespace {

// Surjectivity of the global map: the coefficients generate the unit ideal.
bool rule_surjective(const LocalRule& rule) {
    std::uint64_t g = rule.modulus().m;
    for (const Residue c : rule.coeffs())
        g = std::gcd(g, c);
    return g == 1;
}

struct Expansion {
    CylinderUnion words;
    int lo, hi;
};

// T^{-n}B as a union of cylinders; n = 0 is B itself.
Expansion expand_preimage(const LocalRule& rule, const Cylinder& b, unsigned n,
                          const EnumOptions& opts) {
    if (n == 0) {
        auto u = CylinderUnion::single(rule.modulus(), b);
        return {std::move(u), b.start, b.end()};
    }
    const LocalRule iterate = iterate_rule(rule, n);
    auto u = preimage_cylinder(iterate, b, opts);
    const int lo = u.lo(), hi = u.hi();
    return {std::move(u), lo, hi};
}

bool windows_disjoint(int a_lo, int a_hi, int b_lo, int b_hi) {
    return b_lo > a_hi || b_hi < a_lo;
}

} // namespace

Rational mixing_correlation(const LocalRule& rule, const Cylinder& a, const Cylinder& b,
                            unsigned n, const BernoulliVector& mu,
                            const EnumOptions& opts) {
    if (rule.modulus().m != mu.alphabet())
        throw InvalidInput("mixing_correlation: alphabet mismatch");
    detail::check_cylinder(a, mu.alphabet());
    detail::check_cylinder(b, mu.alphabet());
    const Expansion expansion = expand_preimage(rule, b, n, opts);
    return detail::intersect_measure(a, expansion.words, mu, opts);
}

MixingReport mixing_table(const LocalRule& rule, const Cylinder& a, const Cylinder& b,
                          unsigned n_max, const BernoulliVector& mu,
                          const EnumOptions& opts) {
    if (rule.modulus().m != mu.alphabet())
        throw InvalidInput("mixing_table: alphabet mismatch");
    detail::check_cylinder(a, mu.alphabet());
    detail::check_cylinder(b, mu.alphabet());

    const Rational product = measure(a, mu) * measure(b, mu);
    MixingReport report;
    for (unsigned n = 0; n <= n_max; ++n) {
        const Expansion expansion = expand_preimage(rule, b, n, opts);
        MixingRow row;
        row.n = n;
        row.correlation = detail::intersect_measure(a, expansion.words, mu, opts);
        row.product = product;
        row.equal = row.correlation == product;
        row.expansion_lo = expansion.lo;
        row.expansion_hi = expansion.hi;
        row.disjoint = windows_disjoint(a.start, a.end(), expansion.lo, expansion.hi);
        report.rows.push_back(std::move(row));
    }

    for (std::size_t i = report.rows.size(); i-- > 0;) {
        if (!report.rows[i].equal)
            break;
        report.stable_from = report.rows[i].n;
    }

    // Formal windows [start_B + n*l, end_B + n*r] drift monotonically when
    // l > 0 or r < 0; past the threshold they clear A's window for good.
    const int l = rule.left(), r = rule.right();
    if (l > 0) {
        const int gap = a.end() - b.start; // need n*l > gap
        report.formal_threshold = gap < 0 ? 0u : static_cast<unsigned>(gap / l + 1);
    } else if (r < 0) {
        const int gap = b.end() - a.start; // need n*(-r) > gap
        report.formal_threshold = gap < 0 ? 0u : static_cast<unsigned>(gap / (-r) + 1);
    }
    return report;
}

namespace {

// The two exact consequences of window disjointness. They lean on uniform
// measure preservation, so they are only enforced for the uniform vector;
// a violation there means a broken invariant, not bad input.
void enforce_window_identities(const MixingReport& report) {
    for (const auto& row : report.rows) {
        if (row.disjoint && !row.equal)
            throw std::logic_error(
                "mixing: disjoint realized windows but correlation != product at n=" +
                std::to_string(row.n));
        if (report.formal_threshold && row.n >= *report.formal_threshold && !row.equal)
            throw std::logic_error(
                "mixing: correlation != product beyond the formal threshold at n=" +
                std::to_string(row.n));
    }
}

} // namespace

StrongMixingCheck check_strong_mixing_window(const LocalRule& rule, const Cylinder& a,
                                             const Cylinder& b, unsigned n_max,
                                             const BernoulliVector& mu,
                                             const EnumOptions& opts) {
    // uniform preservation, which the window identities lean on, needs a
    // surjective global map (invertible rules are surjective a fortiori)
    if (!rule_surjective(rule))
        throw InvalidInput("check_strong_mixing_window: rule is not surjective");
    StrongMixingCheck check{mixing_table(rule, a, b, n_max, mu, opts), std::nullopt};
    if (mu.is_uniform())
        enforce_window_identities(check.forward);
    if (is_invertible(rule)) {
        check.inverse = mixing_table(inverse_rule(rule), a, b, n_max, mu, opts);
        if (mu.is_uniform())
            enforce_window_identities(*check.inverse);
    }
    return check;
}

void write_mixing_csv(std::ostream& out, const MixingReport& report) {
    out << "n,corr_num,corr_den,prod_num,prod_den,equal\n";
    for (const auto& row : report.rows) {
        out << row.n << ',' << row.correlation.num_str() << ','
            << row.correlation.den_str() << ',' << row.product.num_str() << ','
            << row.product.den_str() << ',' << (row.equal ? 1 : 0) << '\n';
    }
}

WeakBernoulliResult weak_bernoulli_check(const LocalRule& rule, unsigned i, unsigned n,
                                         unsigned big_n, const BernoulliVector& mu,
                                         const EnumOptions& opts) {
    if (rule.modulus().m != mu.alphabet())
        throw InvalidInput("weak_bernoulli_check: alphabet mismatch");
    const LocalRule inverse = inverse_rule(rule); // throws when not invertible

    const Partition base = coordinate_partition(i, rule.modulus(), opts);

    // past block: join of T^{-k} xi(-i,i) for k = 0..n
    Partition past = base;
    for (unsigned k = 1; k <= n; ++k)
        past = join_partitions(past, pullback_partition(rule, base, k, opts), opts);

    // future block: T^{k+N} xi(-i,i) = preimage under the (k+N)-th iterate of
    // the inverse rule
    Partition future = pullback_partition(inverse, base, big_n, opts);
    for (unsigned k = 1; k <= n; ++k)
        future =
            join_partitions(future, pullback_partition(inverse, base, big_n + k, opts), opts);

    WeakBernoulliResult result;
    result.epsilon = epsilon_independence(past, future, mu, opts);
    result.past_lo = past.lo();
    result.past_hi = past.hi();
    result.future_lo = future.lo();
    result.future_hi = future.hi();

    const int radius = static_cast<int>(i);
    const int l = rule.left(), r = rule.right();
    result.past_formal_lo = -radius + static_cast<int>(n) * std::min(l, 0);
    result.past_formal_hi = radius + static_cast<int>(n) * std::max(r, 0);
    const int gl = inverse.left(), gr = inverse.right();
    const int far = static_cast<int>(big_n + n), near = static_cast<int>(big_n);
    result.future_formal_lo = -radius + (gl < 0 ? far * gl : near * gl);
    result.future_formal_hi = radius + (gr > 0 ? far * gr : near * gr);
    return result;
}

} // namespace lca
