#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "lca/dynamics.hpp"
#include "lca/rational.hpp"
#include "lca/rule.hpp"

namespace lca {

// A cylinder set prescribes the symbols on a finite window; the description
// is exactly a Word.
using Cylinder = Word;

// Symbol distribution on Z_m: exact probabilities summing to 1.
class BernoulliVector {
public:
    explicit BernoulliVector(std::vector<Rational> probs);
    static BernoulliVector uniform(std::uint64_t m);

    std::uint64_t alphabet() const { return static_cast<std::uint64_t>(probs_.size()); }
    const Rational& prob(Residue symbol) const { return probs_[symbol]; }
    bool is_uniform() const { return uniform_; }

private:
    std::vector<Rational> probs_;
    bool uniform_ = false;
};

// Hard cap on enumerated words (and accumulated cell pairs). The CLI lets the
// environment override it via LCA_ENUM_GUARD.
constexpr std::uint64_t kDefaultEnumGuard = std::uint64_t{1} << 24;

struct EnumOptions {
    std::uint64_t guard = kDefaultEnumGuard;
    enum class Mode { Auto, Serial, Parallel } mode = Mode::Auto;
};

// Disjoint union of cylinders sharing one window [lo, lo+width-1]. Rows are
// flat (one word per row), lexicographically sorted and distinct.
class CylinderUnion {
public:
    CylinderUnion(Modulus modulus, int lo, std::size_t width, std::vector<Residue> rows);

    static CylinderUnion single(Modulus modulus, const Cylinder& c);

    const Modulus& modulus() const { return modulus_; }
    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(width_) - 1; }
    std::size_t width() const { return width_; }
    std::size_t word_count() const { return width_ == 0 ? 0 : rows_.size() / width_; }
    std::span<const Residue> word(std::size_t i) const {
        return {rows_.data() + i * width_, width_};
    }

    friend bool operator==(const CylinderUnion&, const CylinderUnion&) = default;

private:
    Modulus modulus_;
    int lo_ = 0;
    std::size_t width_ = 0;
    std::vector<Residue> rows_;
};

// === measures ===============================================================

Rational measure(const Cylinder& c, const BernoulliVector& mu);
Rational measure(const CylinderUnion& u, const BernoulliVector& mu);

// === cylinder preimages =====================================================

// All words on [start+l, end+r] mapping onto the cylinder's symbols. Uses the
// permutative back-substitution path when an end coefficient is a unit,
// otherwise brute-force enumeration (guarded).
CylinderUnion preimage_cylinder(const LocalRule& rule, const Cylinder& c,
                                const EnumOptions& opts = {});
// Brute-force path: enumerates all m^(len + r - l) candidate words.
CylinderUnion preimage_cylinder_brute(const LocalRule& rule, const Cylinder& c,
                                      const EnumOptions& opts = {});
// Permutative path: each output constraint pins the end variable, so exactly
// m^(r-l) words come out without a full enumeration. Throws NotAUnit when
// neither end coefficient is a unit.
CylinderUnion preimage_cylinder_permutative(const LocalRule& rule, const Cylinder& c,
                                            const EnumOptions& opts = {});

// === mixing =================================================================

// Exact mu(A and T^{-n} B): expands T^{-n}B as the preimage union of B under
// the n-th iterate and intersects with A symbol-wise. n = 0 is the direct
// overlap check.
Rational mixing_correlation(const LocalRule& rule, const Cylinder& a, const Cylinder& b,
                            unsigned n, const BernoulliVector& mu,
                            const EnumOptions& opts = {});

struct MixingRow {
    unsigned n = 0;
    Rational correlation; // mu(A and T^{-n}B)
    Rational product;     // mu(A) mu(B)
    bool equal = false;
    int expansion_lo = 0; // realized window of the T^{-n}B expansion
    int expansion_hi = 0;
    bool disjoint = false; // realized windows of A and T^{-n}B are disjoint
};

struct MixingReport {
    std::vector<MixingRow> rows;
    // Least n0 with rows equal for every n in [n0, n_max].
    std::optional<unsigned> stable_from;
    // Least n with the formal windows [start_B + n*l, end_B + n*r] and the
    // window of A disjoint; absent when l <= 0 <= r.
    std::optional<unsigned> formal_threshold;
};

MixingReport mixing_table(const LocalRule& rule, const Cylinder& a, const Cylinder& b,
                          unsigned n_max, const BernoulliVector& mu,
                          const EnumOptions& opts = {});

struct StrongMixingCheck {
    MixingReport forward;
    std::optional<MixingReport> inverse; // present when the rule is invertible
};

// Mixing table for the rule, with two hard checks per row: a row whose
// realized windows are disjoint must equal the product, and so must every row
// at or beyond the formal threshold. Repeats the table for the inverse rule
// when the rule is invertible.
StrongMixingCheck check_strong_mixing_window(const LocalRule& rule, const Cylinder& a,
                                             const Cylinder& b, unsigned n_max,
                                             const BernoulliVector& mu,
                                             const EnumOptions& opts = {});

// Columns: n,corr_num,corr_den,prod_num,prod_den,equal
void write_mixing_csv(std::ostream& out, const MixingReport& report);

// === partitions =============================================================

// Partition of the words on a window [lo, lo+width-1] into labeled cells.
// Labels are dense: every label in [0, cell_count) occurs.
class Partition {
public:
    Partition(Modulus modulus, int lo, unsigned width, std::vector<std::uint32_t> cell_of,
              const EnumOptions& opts = {});

    const Modulus& modulus() const { return modulus_; }
    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(width_) - 1; }
    unsigned width() const { return width_; }
    std::uint64_t word_count() const { return cell_of_.size(); }
    std::uint32_t cell_count() const { return cell_count_; }
    std::uint32_t cell_of_index(std::uint64_t word_index) const {
        return cell_of_[word_index];
    }

private:
    Modulus modulus_;
    int lo_ = 0;
    unsigned width_ = 0;
    std::uint32_t cell_count_ = 0;
    std::vector<std::uint32_t> cell_of_;
};

// The discrete partition of the window [-i, i]: every word its own cell.
Partition coordinate_partition(unsigned i, const Modulus& modulus,
                               const EnumOptions& opts = {});

// Partition whose cells are the preimages of p's cells under the n-th
// iterate; n = 0 returns p unchanged. Empty preimages are dropped.
Partition pullback_partition(const LocalRule& rule, const Partition& p, unsigned n,
                             const EnumOptions& opts = {});

// Common refinement on the hull of the two windows.
Partition join_partitions(const Partition& p, const Partition& q,
                          const EnumOptions& opts = {});

// Sum over all cell pairs of |mu(C and D) - mu(C) mu(D)|. Zero exactly when
// the partitions are independent; bounded by 2.
Rational epsilon_independence(const Partition& p, const Partition& q,
                              const BernoulliVector& mu, const EnumOptions& opts = {});

struct WeakBernoulliResult {
    Rational epsilon;
    // Realized window spans of the two joined partitions.
    int past_lo = 0, past_hi = 0;
    int future_lo = 0, future_hi = 0;
    // Formal containment spans from the rule windows.
    int past_formal_lo = 0, past_formal_hi = 0;
    int future_formal_lo = 0, future_formal_hi = 0;
};

// Independence of the joined past block join_{k=0..n} T^{-k} xi(-i,i) against
// the joined future block join_{k=0..n} T^{k+N} xi(-i,i), the latter built by
// pulling xi back through the inverse rule. Requires an invertible rule.
WeakBernoulliResult weak_bernoulli_check(const LocalRule& rule, unsigned i, unsigned n,
                                         unsigned big_n, const BernoulliVector& mu,
                                         const EnumOptions& opts = {});

// === kernels ================================================================

namespace kernels {

CylinderUnion preimage_brute_serial(const LocalRule& rule, const Cylinder& c,
                                    const EnumOptions& opts = {});
CylinderUnion preimage_brute_parallel(const LocalRule& rule, const Cylinder& c,
                                      const EnumOptions& opts = {});

Rational epsilon_independence_serial(const Partition& p, const Partition& q,
                                     const BernoulliVector& mu,
                                     const EnumOptions& opts = {});
Rational epsilon_independence_parallel(const Partition& p, const Partition& q,
                                       const BernoulliVector& mu,
                                       const EnumOptions& opts = {});

} // namespace kernels

} // namespace lca
