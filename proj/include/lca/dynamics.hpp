#pragma once

#include <vector>

#include "lca/rule.hpp"

namespace lca {

// Finite configuration with wrap-around indexing, the global surrogate for a
// bi-infinite sequence. Cells are reduced mod m on construction.
class CyclicConfig {
public:
    CyclicConfig(Modulus modulus, std::vector<Residue> cells);

    const Modulus& modulus() const { return modulus_; }
    std::size_t size() const { return cells_.size(); }
    Residue cell(std::size_t n) const { return cells_[n]; }
    const std::vector<Residue>& cells() const { return cells_; }

    friend bool operator==(const CyclicConfig&, const CyclicConfig&) = default;

private:
    Modulus modulus_;
    std::vector<Residue> cells_;
};

// A finite block of symbols occupying positions start .. start+size-1.
// Doubles as a cylinder-set description in the measure module.
struct Word {
    int start = 0;
    std::vector<Residue> symbols;

    int end() const { return start + static_cast<int>(symbols.size()) - 1; }
    std::size_t size() const { return symbols.size(); }

    friend bool operator==(const Word&, const Word&) = default;
};

// y_n = sum_i c_i x_{(n+i) mod N}. Requires N >= width(rule).
CyclicConfig apply_cyclic(const LocalRule& rule, const CyclicConfig& x);

// Rotation: y_n = x_{(n+t) mod N}.
CyclicConfig shift_cyclic(const CyclicConfig& x, long long t);

// Finite restriction of the CA map: y_n is produced only where the whole
// neighborhood [n+l, n+r] is covered by the input word, so the output
// occupies [start-l, (start+s)-r]. Requires size(w) >= width(rule).
Word apply_window(const LocalRule& rule, const Word& w);

namespace kernels {

// Serial reference and OpenMP variants; both write a full output vector of
// the input's size. Used directly by the equivalence tests and the benchmark.
void apply_cyclic_serial(const LocalRule& rule, const std::vector<Residue>& in,
                         std::vector<Residue>& out);
void apply_cyclic_parallel(const LocalRule& rule, const std::vector<Residue>& in,
                           std::vector<Residue>& out);

} // namespace kernels

} // namespace lca
