#include "lca/dynamics.hpp"

#include <algorithm>
#include <string>

#include "omp_shim.hpp"

namespace lca {

namespace {

// Below this size the parallel set-up costs more than the loop.
constexpr std::size_t kParallelCells = 1u << 14;

std::size_t wrap(long long n, std::size_t size) {
    const long long s = static_cast<long long>(size);
    return static_cast<std::size_t>(((n % s) + s) % s);
}

} // namespace

CyclicConfig::CyclicConfig(Modulus modulus, std::vector<Residue> cells)
    : modulus_(std::move(modulus)), cells_(std::move(cells)) {
    if (modulus_.m < 2)
        throw InvalidInput("CyclicConfig: invalid modulus");
    if (cells_.empty())
        throw InvalidInput("CyclicConfig: empty configuration");
    for (auto& c : cells_)
        c %= modulus_.m;
}

namespace kernels {

namespace {

Residue cell_with_wrap(const LocalRule& rule, const std::vector<Residue>& in,
                       long long n) {
    const std::uint64_t m = rule.modulus().m;
    const std::vector<Residue>& lambda = rule.coeffs();
    Residue acc = 0;
    for (std::size_t k = 0; k < lambda.size(); ++k)
        acc = (acc + lambda[k] * in[wrap(n + rule.left() + static_cast<long long>(k),
                                         in.size())]) % m;
    return acc;
}

// Index range whose whole neighborhood [n+l, n+r] stays in [0, size).
std::pair<long long, long long> interior(const LocalRule& rule, std::size_t size) {
    const long long total = static_cast<long long>(size);
    const long long lo = std::clamp(-static_cast<long long>(rule.left()), 0LL, total);
    const long long hi = std::clamp(total - rule.right(), lo, total);
    return {lo, hi};
}

} // namespace

void apply_cyclic_serial(const LocalRule& rule, const std::vector<Residue>& in,
                         std::vector<Residue>& out) {
    const std::uint64_t m = rule.modulus().m;
    const std::size_t size = in.size();
    const std::vector<Residue>& lambda = rule.coeffs();
    out.resize(size);
    const auto [bulk_lo, bulk_hi] = interior(rule, size);
    for (long long n = 0; n < bulk_lo; ++n)
        out[static_cast<std::size_t>(n)] = cell_with_wrap(rule, in, n);
    for (long long n = bulk_lo; n < bulk_hi; ++n) {
        const Residue* base = in.data() + n + rule.left();
        Residue acc = 0;
        for (std::size_t k = 0; k < lambda.size(); ++k)
            acc = (acc + lambda[k] * base[k]) % m;
        out[static_cast<std::size_t>(n)] = acc;
    }
    for (long long n = bulk_hi; n < static_cast<long long>(size); ++n)
        out[static_cast<std::size_t>(n)] = cell_with_wrap(rule, in, n);
}

void apply_cyclic_parallel(const LocalRule& rule, const std::vector<Residue>& in,
                           std::vector<Residue>& out) {
    const std::uint64_t m = rule.modulus().m;
    const std::size_t size = in.size();
    const std::vector<Residue>& lambda = rule.coeffs();
    out.resize(size);
    const auto [bulk_lo, bulk_hi] = interior(rule, size);
    for (long long n = 0; n < bulk_lo; ++n)
        out[static_cast<std::size_t>(n)] = cell_with_wrap(rule, in, n);
#pragma omp parallel for schedule(static)
    for (long long n = bulk_lo; n < bulk_hi; ++n) {
        const Residue* base = in.data() + n + rule.left();
        Residue acc = 0;
        for (std::size_t k = 0; k < lambda.size(); ++k)
            acc = (acc + lambda[k] * base[k]) % m;
        out[static_cast<std::size_t>(n)] = acc;
    }
    for (long long n = bulk_hi; n < static_cast<long long>(size); ++n)
        out[static_cast<std::size_t>(n)] = cell_with_wrap(rule, in, n);
}

} // namespace kernels

CyclicConfig apply_cyclic(const LocalRule& rule, const CyclicConfig& x) {
    if (rule.modulus().m != x.modulus().m)
        throw InvalidInput("apply_cyclic: modulus mismatch");
    if (x.size() < static_cast<std::size_t>(rule.width()))
        throw InvalidInput("apply_cyclic: configuration of size " +
                           std::to_string(x.size()) + " is shorter than the rule window");
    std::vector<Residue> out;
    if (x.size() >= kParallelCells)
        kernels::apply_cyclic_parallel(rule, x.cells(), out);
    else
        kernels::apply_cyclic_serial(rule, x.cells(), out);
    return CyclicConfig(x.modulus(), std::move(out));
}

CyclicConfig shift_cyclic(const CyclicConfig& x, long long t) {
    std::vector<Residue> out(x.size());
    for (std::size_t n = 0; n < x.size(); ++n)
        out[n] = x.cell(wrap(static_cast<long long>(n) + t, x.size()));
    return CyclicConfig(x.modulus(), std::move(out));
}

Word apply_window(const LocalRule& rule, const Word& w) {
    if (w.size() < static_cast<std::size_t>(rule.width()))
        throw InvalidInput("apply_window: word shorter than the rule window");
    const std::uint64_t m = rule.modulus().m;
    const int out_start = w.start - rule.left();
    const int out_end = w.end() - rule.right();
    Word out;
    out.start = out_start;
    out.symbols.resize(static_cast<std::size_t>(out_end - out_start + 1));
    for (int n = out_start; n <= out_end; ++n) {
        Residue acc = 0;
        for (int i = rule.left(); i <= rule.right(); ++i)
            acc = (acc + rule.coeff(i) * w.symbols[static_cast<std::size_t>(n + i - w.start)]) % m;
        out.symbols[static_cast<std::size_t>(n - out_start)] = acc;
    }
    return out;
}

} // namespace lca
