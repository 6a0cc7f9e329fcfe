#include <numeric>
#include <string>

#include "lca/measure.hpp"
#include "measure_detail.hpp"
#include "omp_shim.hpp"

namespace lca {

namespace {

struct PreimageFrame {
    int window_lo = 0;
    std::size_t window_width = 0;
    std::size_t constraints = 0; // number of prescribed output symbols
};

PreimageFrame make_frame(const LocalRule& rule, const Cylinder& c) {
    detail::check_cylinder(c, rule.modulus().m);
    PreimageFrame frame;
    frame.window_lo = c.start + rule.left();
    frame.window_width = c.symbols.size() + static_cast<std::size_t>(rule.width()) - 1;
    frame.constraints = c.symbols.size();
    return frame;
}

// Scan candidate word indices [begin, end) in odometer order, appending every
// word that maps onto the cylinder's symbols.
void scan_candidates(const LocalRule& rule, const Cylinder& c, const PreimageFrame& frame,
                     std::uint64_t begin, std::uint64_t end, std::vector<Residue>& sink) {
    const std::uint64_t m = rule.modulus().m;
    const std::size_t width = frame.window_width;
    const std::vector<Residue>& lambda = rule.coeffs();
    std::vector<Residue> digits(width);
    detail::decode_word(begin, digits.data(), width, m);
    for (std::uint64_t idx = begin; idx < end; ++idx) {
        bool match = true;
        for (std::size_t t = 0; t < frame.constraints && match; ++t) {
            Residue acc = 0;
            // x at position n+i sits at digit offset t + (i - l)
            for (std::size_t k = 0; k < lambda.size(); ++k)
                acc = (acc + lambda[k] * digits[t + k]) % m;
            match = acc == c.symbols[t];
        }
        if (match)
            sink.insert(sink.end(), digits.begin(), digits.end());
        detail::increment_word(digits.data(), width, m);
    }
}

} // namespace

namespace kernels {

CylinderUnion preimage_brute_serial(const LocalRule& rule, const Cylinder& c,
                                    const EnumOptions& opts) {
    const PreimageFrame frame = make_frame(rule, c);
    const std::uint64_t total = detail::guarded_pow(
        rule.modulus().m, frame.window_width, opts.guard, "preimage_cylinder_brute");
    std::vector<Residue> rows;
    scan_candidates(rule, c, frame, 0, total, rows);
    return CylinderUnion(rule.modulus(), frame.window_lo, frame.window_width,
                         std::move(rows));
}

CylinderUnion preimage_brute_parallel(const LocalRule& rule, const Cylinder& c,
                                      const EnumOptions& opts) {
    const PreimageFrame frame = make_frame(rule, c);
    const std::uint64_t total = detail::guarded_pow(
        rule.modulus().m, frame.window_width, opts.guard, "preimage_cylinder_brute");
    const int threads = omp_get_max_threads();
    std::vector<std::vector<Residue>> chunks(static_cast<std::size_t>(threads));
#pragma omp parallel num_threads(threads)
    {
        const int t = omp_get_thread_num();
        const std::uint64_t begin = total * static_cast<std::uint64_t>(t) /
                                    static_cast<std::uint64_t>(threads);
        const std::uint64_t end = total * (static_cast<std::uint64_t>(t) + 1) /
                                  static_cast<std::uint64_t>(threads);
        scan_candidates(rule, c, frame, begin, end, chunks[static_cast<std::size_t>(t)]);
    }
    // chunks cover ascending index ranges, so concatenation stays sorted
    std::vector<Residue> rows;
    for (auto& chunk : chunks)
        rows.insert(rows.end(), chunk.begin(), chunk.end());
    return CylinderUnion(rule.modulus(), frame.window_lo, frame.window_width,
                         std::move(rows));
}

} // namespace kernels

CylinderUnion preimage_cylinder_brute(const LocalRule& rule, const Cylinder& c,
                                      const EnumOptions& opts) {
    const PreimageFrame frame = make_frame(rule, c);
    const std::uint64_t total = detail::guarded_pow(
        rule.modulus().m, frame.window_width, opts.guard, "preimage_cylinder_brute");
    if (detail::use_parallel(opts, total))
        return kernels::preimage_brute_parallel(rule, c, opts);
    return kernels::preimage_brute_serial(rule, c, opts);
}

CylinderUnion preimage_cylinder_permutative(const LocalRule& rule, const Cylinder& c,
                                            const EnumOptions& opts) {
    const PreimageFrame frame = make_frame(rule, c);
    const std::uint64_t m = rule.modulus().m;
    const auto cls = permutativity(rule);
    if (!cls.left && !cls.right)
        throw NotAUnit("preimage_cylinder_permutative: neither end coefficient of the "
                       "rule is a unit mod " + std::to_string(m));

    const std::size_t free_count = static_cast<std::size_t>(rule.width()) - 1;
    const std::uint64_t total = detail::guarded_pow(m, free_count, opts.guard,
                                                    "preimage_cylinder_permutative");
    const std::size_t width = frame.window_width;
    const std::size_t s = frame.constraints;
    std::vector<Residue> rows;
    rows.reserve(total * width);
    std::vector<Residue> digits(width, 0);
    std::vector<Residue> free_digits(free_count, 0);

    if (cls.right) {
        // free block at the low end; each constraint, in increasing position,
        // determines the next variable through the unit right coefficient
        const std::vector<Residue>& lambda = rule.coeffs();
        const Residue unit_inv = inv_mod(lambda.back(), m);
        for (std::uint64_t f = 0; f < total; ++f) {
            std::copy(free_digits.begin(), free_digits.end(), digits.begin());
            for (std::size_t t = 0; t < s; ++t) {
                Residue acc = 0;
                for (std::size_t k = 0; k + 1 < lambda.size(); ++k)
                    acc = (acc + lambda[k] * digits[t + k]) % m;
                digits[t + free_count] =
                    mul_mod(unit_inv, sub_mod(c.symbols[t], acc, m), m);
            }
            rows.insert(rows.end(), digits.begin(), digits.end());
            detail::increment_word(free_digits.data(), free_count, m);
        }
    } else {
        // left-permutative mirror: free block at the high end, constraints
        // processed from the last position downward
        const std::vector<Residue>& lambda = rule.coeffs();
        const Residue unit_inv = inv_mod(lambda.front(), m);
        for (std::uint64_t f = 0; f < total; ++f) {
            std::copy(free_digits.begin(), free_digits.end(),
                      digits.begin() + static_cast<std::ptrdiff_t>(s));
            for (std::size_t t = s; t-- > 0;) {
                Residue acc = 0;
                for (std::size_t k = 1; k < lambda.size(); ++k)
                    acc = (acc + lambda[k] * digits[t + k]) % m;
                digits[t] = mul_mod(unit_inv, sub_mod(c.symbols[t], acc, m), m);
            }
            rows.insert(rows.end(), digits.begin(), digits.end());
            detail::increment_word(free_digits.data(), free_count, m);
        }
    }
    return CylinderUnion(rule.modulus(), frame.window_lo, width, std::move(rows));
}

CylinderUnion preimage_cylinder(const LocalRule& rule, const Cylinder& c,
                                const EnumOptions& opts) {
    const auto cls = permutativity(rule);
    if (cls.left || cls.right)
        return preimage_cylinder_permutative(rule, c, opts);
    return preimage_cylinder_brute(rule, c, opts);
}

} // namespace lca
