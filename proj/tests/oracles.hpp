// Brute-force reference computations for the test suites. Everything here
// is independent of the library's own formula/kernel code paths.
#pragma once

#include "nbldpc/ensemble.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

namespace oracle {

// Closure of a set of vectors under addition: the spanned subspace as a
// sorted element list. Ambient m <= 4 intended.
inline std::vector<std::uint64_t> span_closure(const std::vector<std::uint64_t>& gens) {
    std::set<std::uint64_t> members{0};
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::uint64_t> snapshot(members.begin(), members.end());
        for (std::uint64_t a : snapshot) {
            for (std::uint64_t g : gens) {
                if (members.insert(a ^ g).second) grew = true;
            }
        }
    }
    return {members.begin(), members.end()};
}

// Every subspace of GF(2)^m found by closing all generator subsets of size
// <= m, deduplicated by element list. Returns element lists grouped by dim.
inline std::map<int, std::set<std::vector<std::uint64_t>>> all_subspaces_by_dim(int m) {
    std::map<int, std::set<std::vector<std::uint64_t>>> out;
    const std::uint64_t top = 1ull << m;

    std::vector<std::uint64_t> gens;
    auto recurse = [&](auto&& self, std::uint64_t first) -> void {
        const auto elems = span_closure(gens);
        int dim = 0;
        while ((1ull << dim) < elems.size()) ++dim;
        out[dim].insert(elems);
        if (static_cast<int>(gens.size()) == m) return;
        for (std::uint64_t v = first; v < top; ++v) {
            gens.push_back(v);
            self(self, v + 1);
            gens.pop_back();
        }
    };
    recurse(recurse, 1);
    return out;
}

// x_{l+1} = eps * lambda(1 - rho(1 - x_l)): the binary erasure recursion.
inline double binary_de_step(const nbldpc::EnsembleSpec& e, double eps, double x) {
    return eps * e.lambda.eval(1.0 - e.rho.eval(1.0 - x));
}

}  // namespace oracle
