#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "lca/measure.hpp"
#include "measure_detail.hpp"
#include "omp_shim.hpp"

namespace lca {

namespace {

// Order-preserving compaction: labels keep their relative order, unused ones
// disappear. Labels wilder than the word count take the map path.
std::uint32_t compact_labels(std::vector<std::uint32_t>& labels) {
    std::uint32_t max_label = 0;
    for (const auto l : labels)
        max_label = std::max(max_label, l);
    if (static_cast<std::size_t>(max_label) < labels.size()) {
        std::vector<std::uint32_t> remap(static_cast<std::size_t>(max_label) + 1, 0);
        for (const auto l : labels)
            remap[l] = 1;
        std::uint32_t next = 0;
        for (auto& slot : remap) {
            const std::uint32_t present = slot;
            slot = next;
            next += present;
        }
        for (auto& l : labels)
            l = remap[l];
        return next;
    }
    std::map<std::uint32_t, std::uint32_t> remap;
    for (const auto l : labels)
        remap.emplace(l, 0);
    std::uint32_t next = 0;
    for (auto& [label, dense] : remap)
        dense = next++;
    for (auto& l : labels)
        l = remap.at(l);
    return next;
}

} // namespace

Partition::Partition(Modulus modulus, int lo, unsigned width,
                     std::vector<std::uint32_t> cell_of, const EnumOptions& opts)
    : modulus_(std::move(modulus)), lo_(lo), width_(width), cell_of_(std::move(cell_of)) {
    if (width_ == 0)
        throw InvalidInput("Partition: empty window");
    const std::uint64_t words =
        detail::guarded_pow(modulus_.m, width_, opts.guard, "Partition");
    if (cell_of_.size() != words)
        throw InvalidInput("Partition: expected " + std::to_string(words) +
                           " labels, got " + std::to_string(cell_of_.size()));
    cell_count_ = compact_labels(cell_of_);
}

Partition coordinate_partition(unsigned i, const Modulus& modulus,
                               const EnumOptions& opts) {
    const unsigned width = 2 * i + 1;
    const std::uint64_t words =
        detail::guarded_pow(modulus.m, width, opts.guard, "coordinate_partition");
    if (words > std::uint32_t(-1))
        throw GuardExceeded("coordinate_partition: too many cells for 32-bit labels");
    std::vector<std::uint32_t> labels(words);
    std::iota(labels.begin(), labels.end(), 0u);
    return Partition(modulus, -static_cast<int>(i), width, std::move(labels), opts);
}

Partition pullback_partition(const LocalRule& rule, const Partition& p, unsigned n,
                             const EnumOptions& opts) {
    if (rule.modulus().m != p.modulus().m)
        throw InvalidInput("pullback_partition: modulus mismatch");
    if (n == 0)
        return p;
    const LocalRule iterate = iterate_rule(rule, n);
    const std::uint64_t m = rule.modulus().m;
    const int lo = p.lo() + iterate.left();
    const unsigned width = p.width() + static_cast<unsigned>(iterate.width()) - 1;
    const std::uint64_t words =
        detail::guarded_pow(m, width, opts.guard, "pullback_partition");

    const std::vector<Residue>& lambda = iterate.coeffs();
    std::vector<std::uint32_t> labels(words);
    const int threads = detail::use_parallel(opts, words) ? omp_get_max_threads() : 1;
#pragma omp parallel num_threads(threads)
    {
        const int t = omp_get_thread_num();
        const std::uint64_t begin = words * static_cast<std::uint64_t>(t) /
                                    static_cast<std::uint64_t>(threads);
        const std::uint64_t end = words * (static_cast<std::uint64_t>(t) + 1) /
                                  static_cast<std::uint64_t>(threads);
        std::vector<Residue> digits(width);
        detail::decode_word(begin, digits.data(), width, m);
        for (std::uint64_t idx = begin; idx < end; ++idx) {
            std::uint64_t image = 0;
            for (unsigned pos = 0; pos < p.width(); ++pos) {
                Residue acc = 0;
                for (std::size_t k = 0; k < lambda.size(); ++k)
                    acc = (acc + lambda[k] * digits[pos + k]) % m;
                image = image * m + acc;
            }
            labels[idx] = p.cell_of_index(image);
            detail::increment_word(digits.data(), width, m);
        }
    }
    return Partition(rule.modulus(), lo, width, std::move(labels), opts);
}

Partition join_partitions(const Partition& p, const Partition& q,
                          const EnumOptions& opts) {
    if (p.modulus().m != q.modulus().m)
        throw InvalidInput("join_partitions: modulus mismatch");
    const std::uint64_t m = p.modulus().m;
    const int lo = std::min(p.lo(), q.lo());
    const int hi = std::max(p.hi(), q.hi());
    const unsigned width = static_cast<unsigned>(hi - lo + 1);
    const std::uint64_t words =
        detail::guarded_pow(m, width, opts.guard, "join_partitions");

    const std::uint64_t pair_count =
        static_cast<std::uint64_t>(p.cell_count()) * q.cell_count();
    if (pair_count > opts.guard)
        throw GuardExceeded("join_partitions: cell-pair table exceeds the guard");

    // strides for projecting a hull word onto each factor window
    const auto project = [&](std::uint64_t idx, const Partition& part,
                             std::vector<Residue>& digits) {
        detail::decode_word(idx, digits.data(), width, m);
        std::uint64_t sub = 0;
        const std::size_t off = static_cast<std::size_t>(part.lo() - lo);
        for (unsigned t = 0; t < part.width(); ++t)
            sub = sub * m + digits[off + t];
        return sub;
    };

    std::vector<std::uint32_t> pair_label(pair_count, std::uint32_t(-1));
    std::vector<std::uint32_t> labels(words);
    std::vector<Residue> digits(width);
    std::uint32_t next = 0;
    for (std::uint64_t idx = 0; idx < words; ++idx) {
        const std::uint64_t cp = p.cell_of_index(project(idx, p, digits));
        const std::uint64_t cq = q.cell_of_index(project(idx, q, digits));
        const std::uint64_t key = cp * q.cell_count() + cq;
        if (pair_label[key] == std::uint32_t(-1))
            pair_label[key] = next++;
        labels[idx] = pair_label[key];
    }
    return Partition(p.modulus(), lo, width, std::move(labels), opts);
}

namespace {

// Coordinates covered by the two partition windows, ascending and distinct.
std::vector<int> union_coordinates(const Partition& p, const Partition& q) {
    std::vector<int> coords;
    for (int pos = p.lo(); pos <= p.hi(); ++pos)
        coords.push_back(pos);
    for (int pos = q.lo(); pos <= q.hi(); ++pos)
        if (pos < p.lo() || pos > p.hi())
            coords.push_back(pos);
    std::sort(coords.begin(), coords.end());
    return coords;
}

struct EpsilonFrame {
    std::vector<int> coords;
    // digit offset of each factor window inside the coordinate list
    std::vector<std::size_t> p_offsets;
    std::vector<std::size_t> q_offsets;
    std::uint64_t assignments = 0;
    std::uint64_t pair_count = 0;
};

EpsilonFrame make_epsilon_frame(const Partition& p, const Partition& q,
                                const BernoulliVector& mu, const EnumOptions& opts) {
    if (p.modulus().m != q.modulus().m)
        throw InvalidInput("epsilon_independence: modulus mismatch");
    if (p.modulus().m != mu.alphabet())
        throw InvalidInput("epsilon_independence: alphabet mismatch");
    EpsilonFrame frame;
    frame.coords = union_coordinates(p, q);
    frame.assignments = detail::guarded_pow(p.modulus().m, frame.coords.size(),
                                            opts.guard, "epsilon_independence");
    frame.pair_count = static_cast<std::uint64_t>(p.cell_count()) * q.cell_count();
    if (frame.pair_count > opts.guard)
        throw GuardExceeded("epsilon_independence: cell-pair table exceeds the guard");
    for (unsigned t = 0; t < p.width(); ++t)
        frame.p_offsets.push_back(static_cast<std::size_t>(
            std::lower_bound(frame.coords.begin(), frame.coords.end(), p.lo() + static_cast<int>(t)) -
            frame.coords.begin()));
    for (unsigned t = 0; t < q.width(); ++t)
        frame.q_offsets.push_back(static_cast<std::size_t>(
            std::lower_bound(frame.coords.begin(), frame.coords.end(), q.lo() + static_cast<int>(t)) -
            frame.coords.begin()));
    return frame;
}

std::vector<std::uint64_t> cell_counts(const Partition& p) {
    std::vector<std::uint64_t> counts(p.cell_count(), 0);
    for (std::uint64_t idx = 0; idx < p.word_count(); ++idx)
        counts[p.cell_of_index(idx)] += 1;
    return counts;
}

// Per-cell measures of one partition.
std::vector<Rational> cell_measures(const Partition& p, const BernoulliVector& mu) {
    const std::uint64_t m = p.modulus().m;
    std::vector<Rational> out(p.cell_count());
    if (mu.is_uniform()) {
        const std::vector<std::uint64_t> counts = cell_counts(p);
        const Rational unit = Rational::uniform_power(m, p.width());
        for (std::size_t cell = 0; cell < out.size(); ++cell)
            out[cell] = Rational::from_uint(counts[cell]) * unit;
        return out;
    }
    std::vector<Residue> digits(p.width());
    for (std::uint64_t idx = 0; idx < p.word_count(); ++idx) {
        detail::decode_word(idx, digits.data(), p.width(), m);
        Rational weight = Rational::from_uint(1);
        for (const Residue s : digits)
            weight *= mu.prob(s);
        out[p.cell_of_index(idx)] += weight;
    }
    return out;
}

// Uniform case over the common denominator m^(wP+wQ): the joint count scales
// by m^overlap and every term is a 64-bit integer as long as each factor
// word count stays below 2^31.
bool uniform_counts_fit(const Partition& p, const Partition& q) {
    const std::uint64_t cap = std::uint64_t{1} << 31;
    return p.word_count() < cap && q.word_count() < cap;
}

Rational epsilon_uniform_counts(const Partition& p, const Partition& q,
                                const EpsilonFrame& frame,
                                const std::vector<std::uint64_t>& counts, int threads) {
    const std::uint64_t m = p.modulus().m;
    const std::vector<std::uint64_t> count_p = cell_counts(p);
    const std::vector<std::uint64_t> count_q = cell_counts(q);
    const unsigned overlap =
        p.width() + q.width() - static_cast<unsigned>(frame.coords.size());
    std::uint64_t scale = 1;
    for (unsigned t = 0; t < overlap; ++t)
        scale *= m;

    std::vector<mpz_class> partial(static_cast<std::size_t>(threads), mpz_class(0));
#pragma omp parallel num_threads(threads)
    {
        const int t = omp_get_thread_num();
        mpz_class local = 0;
#pragma omp for schedule(static)
        for (long long cp = 0; cp < static_cast<long long>(p.cell_count()); ++cp) {
            const std::uint64_t row = static_cast<std::uint64_t>(cp) * q.cell_count();
            for (std::uint64_t cq = 0; cq < q.cell_count(); ++cq) {
                const std::uint64_t joint = counts[row + cq] * scale;
                const std::uint64_t prod =
                    count_p[static_cast<std::size_t>(cp)] * count_q[cq];
                local += joint > prod ? joint - prod : prod - joint;
            }
        }
        partial[static_cast<std::size_t>(t)] = std::move(local);
    }
    mpz_class numerator = 0;
    for (const auto& part : partial)
        numerator += part;
    mpz_class denominator;
    mpz_ui_pow_ui(denominator.get_mpz_t(), static_cast<unsigned long>(m),
                  p.width() + q.width());
    return Rational(std::move(numerator), std::move(denominator));
}

// Joint accumulation over one index range; exactly one of the two sinks is
// used, depending on whether the measure is uniform.
void accumulate_joint(const Partition& p, const Partition& q, const BernoulliVector& mu,
                      const EpsilonFrame& frame, std::uint64_t begin, std::uint64_t end,
                      std::vector<std::uint64_t>* counts, std::vector<Rational>* weights) {
    const std::uint64_t m = p.modulus().m;
    const std::size_t coord_count = frame.coords.size();
    std::vector<Residue> digits(coord_count);
    detail::decode_word(begin, digits.data(), coord_count, m);
    for (std::uint64_t idx = begin; idx < end; ++idx) {
        std::uint64_t ip = 0;
        for (const std::size_t off : frame.p_offsets)
            ip = ip * m + digits[off];
        std::uint64_t iq = 0;
        for (const std::size_t off : frame.q_offsets)
            iq = iq * m + digits[off];
        const std::uint64_t key =
            static_cast<std::uint64_t>(p.cell_of_index(ip)) * q.cell_count() +
            q.cell_of_index(iq);
        if (counts) {
            (*counts)[key] += 1;
        } else {
            Rational weight = Rational::from_uint(1);
            for (const Residue s : digits)
                weight *= mu.prob(s);
            (*weights)[key] += weight;
        }
        detail::increment_word(digits.data(), coord_count, m);
    }
}

Rational epsilon_from_joint(const Partition& p, const Partition& q,
                            const BernoulliVector& mu, const EpsilonFrame& frame,
                            const std::vector<std::uint64_t>* counts,
                            const std::vector<Rational>* weights) {
    const std::vector<Rational> mu_p = cell_measures(p, mu);
    const std::vector<Rational> mu_q = cell_measures(q, mu);
    const Rational unit =
        Rational::uniform_power(p.modulus().m, static_cast<unsigned>(frame.coords.size()));
    Rational total;
    for (std::uint64_t cp = 0; cp < p.cell_count(); ++cp) {
        for (std::uint64_t cq = 0; cq < q.cell_count(); ++cq) {
            const std::uint64_t key = cp * q.cell_count() + cq;
            const Rational joint = counts
                                       ? Rational::from_uint((*counts)[key]) * unit
                                       : (*weights)[key];
            total += abs_diff(joint, mu_p[cp] * mu_q[cq]);
        }
    }
    return total;
}

} // namespace

namespace kernels {

Rational epsilon_independence_serial(const Partition& p, const Partition& q,
                                     const BernoulliVector& mu, const EnumOptions& opts) {
    const EpsilonFrame frame = make_epsilon_frame(p, q, mu, opts);
    if (mu.is_uniform()) {
        std::vector<std::uint64_t> counts(frame.pair_count, 0);
        accumulate_joint(p, q, mu, frame, 0, frame.assignments, &counts, nullptr);
        if (uniform_counts_fit(p, q))
            return epsilon_uniform_counts(p, q, frame, counts, 1);
        return epsilon_from_joint(p, q, mu, frame, &counts, nullptr);
    }
    std::vector<Rational> weights(frame.pair_count);
    accumulate_joint(p, q, mu, frame, 0, frame.assignments, nullptr, &weights);
    return epsilon_from_joint(p, q, mu, frame, nullptr, &weights);
}

Rational epsilon_independence_parallel(const Partition& p, const Partition& q,
                                       const BernoulliVector& mu,
                                       const EnumOptions& opts) {
    const EpsilonFrame frame = make_epsilon_frame(p, q, mu, opts);
    const int threads = omp_get_max_threads();
    const std::uint64_t total = frame.assignments;

    if (mu.is_uniform()) {
        std::vector<std::vector<std::uint64_t>> partial(
            static_cast<std::size_t>(threads));
#pragma omp parallel num_threads(threads)
        {
            const int t = omp_get_thread_num();
            auto& local = partial[static_cast<std::size_t>(t)];
            local.assign(frame.pair_count, 0);
            const std::uint64_t begin = total * static_cast<std::uint64_t>(t) /
                                        static_cast<std::uint64_t>(threads);
            const std::uint64_t end = total * (static_cast<std::uint64_t>(t) + 1) /
                                      static_cast<std::uint64_t>(threads);
            accumulate_joint(p, q, mu, frame, begin, end, &local, nullptr);
        }
        std::vector<std::uint64_t> counts(frame.pair_count, 0);
        for (const auto& local : partial)
            for (std::size_t key = 0; key < counts.size(); ++key)
                counts[key] += local[key];
        if (uniform_counts_fit(p, q))
            return epsilon_uniform_counts(p, q, frame, counts, threads);
        return epsilon_from_joint(p, q, mu, frame, &counts, nullptr);
    }

    std::vector<std::vector<Rational>> partial(static_cast<std::size_t>(threads));
#pragma omp parallel num_threads(threads)
    {
        const int t = omp_get_thread_num();
        auto& local = partial[static_cast<std::size_t>(t)];
        local.assign(frame.pair_count, Rational());
        const std::uint64_t begin = total * static_cast<std::uint64_t>(t) /
                                    static_cast<std::uint64_t>(threads);
        const std::uint64_t end = total * (static_cast<std::uint64_t>(t) + 1) /
                                  static_cast<std::uint64_t>(threads);
        accumulate_joint(p, q, mu, frame, begin, end, nullptr, &local);
    }
    std::vector<Rational> weights(frame.pair_count);
    for (auto& local : partial)
        for (std::size_t key = 0; key < weights.size(); ++key)
            weights[key] += local[key];
    return epsilon_from_joint(p, q, mu, frame, nullptr, &weights);
}

} // namespace kernels

Rational epsilon_independence(const Partition& p, const Partition& q,
                              const BernoulliVector& mu, const EnumOptions& opts) {
    const EpsilonFrame frame = make_epsilon_frame(p, q, mu, opts);
    if (detail::use_parallel(opts, frame.assignments))
        return kernels::epsilon_independence_parallel(p, q, mu, opts);
    return kernels::epsilon_independence_serial(p, q, mu, opts);
}

} // namespace lca
