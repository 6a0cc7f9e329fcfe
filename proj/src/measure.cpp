#include "lca/measure.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <string>

#include "measure_detail.hpp"
#include "omp_shim.hpp"

namespace lca {

namespace detail {

std::uint64_t guarded_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t limit,
                          const char* what) {
    const auto value = checked_pow(base, exp, limit);
    if (!value)
        throw GuardExceeded(std::string(what) + ": " + std::to_string(base) + "^" +
                            std::to_string(exp) + " exceeds the enumeration guard " +
                            std::to_string(limit));
    return *value;
}

void check_cylinder(const Cylinder& c, std::uint64_t m) {
    if (c.symbols.empty())
        throw InvalidInput("cylinder must prescribe at least one symbol");
    for (const Residue s : c.symbols)
        if (s >= m)
            throw InvalidInput("cylinder symbol " + std::to_string(s) +
                               " out of range for alphabet " + std::to_string(m));
}

bool use_parallel(const EnumOptions& opts, std::uint64_t work) {
    switch (opts.mode) {
    case EnumOptions::Mode::Serial:
        return false;
    case EnumOptions::Mode::Parallel:
        return true;
    case EnumOptions::Mode::Auto:
    default:
        return work >= (std::uint64_t{1} << 15) && omp_get_max_threads() > 1;
    }
}

} // namespace detail

BernoulliVector::BernoulliVector(std::vector<Rational> probs) : probs_(std::move(probs)) {
    if (probs_.size() < 2)
        throw InvalidInput("Bernoulli vector needs an alphabet of size >= 2");
    Rational sum;
    const Rational zero;
    for (const auto& p : probs_) {
        if (p < zero)
            throw InvalidInput("Bernoulli vector has a negative entry");
        sum += p;
    }
    if (!(sum == Rational::from_uint(1)))
        throw InvalidInput("Bernoulli vector entries sum to " + sum.str() + ", not 1");
    uniform_ = std::all_of(probs_.begin(), probs_.end(),
                           [&](const Rational& p) { return p == probs_[0]; });
}

BernoulliVector BernoulliVector::uniform(std::uint64_t m) {
    if (m < 2)
        throw InvalidInput("uniform Bernoulli vector needs m >= 2");
    return BernoulliVector(std::vector<Rational>(m, Rational(1, m)));
}

CylinderUnion::CylinderUnion(Modulus modulus, int lo, std::size_t width,
                             std::vector<Residue> rows)
    : modulus_(std::move(modulus)), lo_(lo), width_(width), rows_(std::move(rows)) {
    if (width_ == 0)
        throw InvalidInput("CylinderUnion: empty window");
    if (rows_.size() % width_ != 0)
        throw InvalidInput("CylinderUnion: ragged row buffer");
    for (const Residue s : rows_)
        if (s >= modulus_.m)
            throw InvalidInput("CylinderUnion: symbol out of range");

    const std::size_t count = rows_.size() / width_;
    auto row_less = [&](std::size_t a, std::size_t b) {
        return std::lexicographical_compare(
            rows_.begin() + static_cast<std::ptrdiff_t>(a * width_),
            rows_.begin() + static_cast<std::ptrdiff_t>((a + 1) * width_),
            rows_.begin() + static_cast<std::ptrdiff_t>(b * width_),
            rows_.begin() + static_cast<std::ptrdiff_t>((b + 1) * width_));
    };
    bool sorted = true;
    for (std::size_t i = 0; i + 1 < count && sorted; ++i)
        sorted = !row_less(i + 1, i);
    if (!sorted) {
        std::vector<std::size_t> order(count);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), row_less);
        std::vector<Residue> permuted(rows_.size());
        for (std::size_t i = 0; i < count; ++i)
            std::copy_n(rows_.begin() + static_cast<std::ptrdiff_t>(order[i] * width_),
                        width_, permuted.begin() + static_cast<std::ptrdiff_t>(i * width_));
        rows_ = std::move(permuted);
    }
    // drop duplicate rows
    std::size_t kept = 0;
    for (std::size_t i = 0; i < count; ++i) {
        if (kept > 0 &&
            std::equal(rows_.begin() + static_cast<std::ptrdiff_t>(i * width_),
                       rows_.begin() + static_cast<std::ptrdiff_t>((i + 1) * width_),
                       rows_.begin() + static_cast<std::ptrdiff_t>((kept - 1) * width_)))
            continue;
        if (kept != i)
            std::copy_n(rows_.begin() + static_cast<std::ptrdiff_t>(i * width_), width_,
                        rows_.begin() + static_cast<std::ptrdiff_t>(kept * width_));
        ++kept;
    }
    rows_.resize(kept * width_);
}

CylinderUnion CylinderUnion::single(Modulus modulus, const Cylinder& c) {
    detail::check_cylinder(c, modulus.m);
    return CylinderUnion(std::move(modulus), c.start, c.symbols.size(), c.symbols);
}

Rational measure(const Cylinder& c, const BernoulliVector& mu) {
    detail::check_cylinder(c, mu.alphabet());
    if (mu.is_uniform())
        return Rational::uniform_power(mu.alphabet(),
                                       static_cast<unsigned>(c.symbols.size()));
    Rational product = Rational::from_uint(1);
    for (const Residue s : c.symbols)
        product *= mu.prob(s);
    return product;
}

Rational measure(const CylinderUnion& u, const BernoulliVector& mu) {
    if (u.modulus().m != mu.alphabet())
        throw InvalidInput("measure: alphabet mismatch");
    if (mu.is_uniform())
        return Rational::from_uint(u.word_count()) *
               Rational::uniform_power(mu.alphabet(), static_cast<unsigned>(u.width()));
    Rational sum;
    for (std::size_t i = 0; i < u.word_count(); ++i) {
        Rational product = Rational::from_uint(1);
        for (const Residue s : u.word(i))
            product *= mu.prob(s);
        sum += product;
    }
    return sum;
}

namespace detail {

Rational intersect_measure(const Cylinder& a, const CylinderUnion& u,
                           const BernoulliVector& mu, const EnumOptions& opts) {
    check_cylinder(a, mu.alphabet());
    if (u.modulus().m != mu.alphabet())
        throw InvalidInput("intersect_measure: alphabet mismatch");

    const int a_lo = a.start, a_hi = a.end();
    const int u_lo = u.lo(), u_hi = u.hi();
    // positions of A not covered by the union's window
    std::vector<int> extra;
    for (int pos = a_lo; pos <= a_hi; ++pos)
        if (pos < u_lo || pos > u_hi)
            extra.push_back(pos);

    const int ov_lo = std::max(a_lo, u_lo), ov_hi = std::min(a_hi, u_hi);
    auto row_consistent = [&](std::span<const Residue> row) {
        for (int pos = ov_lo; pos <= ov_hi; ++pos)
            if (row[static_cast<std::size_t>(pos - u_lo)] !=
                a.symbols[static_cast<std::size_t>(pos - a_lo)])
                return false;
        return true;
    };

    const std::size_t count = u.word_count();
    if (mu.is_uniform()) {
        std::uint64_t hits = 0;
        if (use_parallel(opts, count)) {
            const long long total = static_cast<long long>(count);
#pragma omp parallel for schedule(static) reduction(+ : hits)
            for (long long i = 0; i < total; ++i)
                hits += row_consistent(u.word(static_cast<std::size_t>(i))) ? 1 : 0;
        } else {
            for (std::size_t i = 0; i < count; ++i)
                hits += row_consistent(u.word(i)) ? 1 : 0;
        }
        const unsigned coords = static_cast<unsigned>(u.width() + extra.size());
        return Rational::from_uint(hits) * Rational::uniform_power(mu.alphabet(), coords);
    }

    Rational outside = Rational::from_uint(1);
    for (const int pos : extra)
        outside *= mu.prob(a.symbols[static_cast<std::size_t>(pos - a_lo)]);

    auto row_weight = [&](std::span<const Residue> row) {
        Rational product = Rational::from_uint(1);
        for (const Residue s : row)
            product *= mu.prob(s);
        return product;
    };

    if (use_parallel(opts, count)) {
        const int threads = omp_get_max_threads();
        std::vector<Rational> partial(static_cast<std::size_t>(threads));
#pragma omp parallel num_threads(threads)
        {
            const int t = omp_get_thread_num();
            Rational local;
#pragma omp for schedule(static)
            for (long long i = 0; i < static_cast<long long>(count); ++i) {
                const auto row = u.word(static_cast<std::size_t>(i));
                if (row_consistent(row))
                    local += row_weight(row);
            }
            partial[static_cast<std::size_t>(t)] = std::move(local);
        }
        Rational sum;
        for (auto& part : partial)
            sum += part;
        return sum * outside;
    }

    Rational sum;
    for (std::size_t i = 0; i < count; ++i) {
        const auto row = u.word(i);
        if (row_consistent(row))
            sum += row_weight(row);
    }
    return sum * outside;
}

} // namespace detail

} // namespace lca
