#pragma once

// Gale-Berlekamp switching game: maximize sum a_ij x_i y_j over sign vectors
// x, y for a +-1 matrix, exactly and by the random-column / majority-row
// strategy, plus the export bridging tanglegram decompositions into the same
// shape.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tgl/common.hpp"
#include "tgl/rng.hpp"
#include "tgl/tanglegram.hpp"

namespace tgl {

struct SignMatrix {
    int n = 0;
    std::vector<int8_t> a; // row-major, entries +1/-1

    int8_t at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
    int8_t& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
};

inline SignMatrix make_sign_matrix(int n) {
    if (n < 1) throw std::invalid_argument("sign matrix dimension must be >= 1");
    return SignMatrix{n, std::vector<int8_t>(static_cast<size_t>(n) * n, 1)};
}

inline SignMatrix random_sign_matrix(int n, uint64_t seed) {
    SignMatrix m = make_sign_matrix(n);
    SplitMix64 g(seed);
    for (auto& e : m.a) e = static_cast<int8_t>(g.sign());
    return m;
}

struct GbResult {
    long long value = 0;
    std::vector<int8_t> x, y;
};

inline long long gb_value(const SignMatrix& m, const std::vector<int8_t>& x, const std::vector<int8_t>& y) {
    long long v = 0;
    for (int i = 0; i < m.n; ++i) {
        long long row = 0;
        for (int j = 0; j < m.n; ++j) row += m.at(i, j) * y[j];
        v += x[i] * row;
    }
    return v;
}

// Exact maximum: enumerate column signs y in Gray-code order, keeping the row
// inner products s_i incrementally updated; the optimal rows are x_i =
// sign(s_i) (ties to +1), giving value sum |s_i|. First maximizer in
// enumeration order is returned.
inline GbResult gb_exact(const SignMatrix& m) {
    if (m.n > 22) throw size_limit_error("gb_exact: dimension capped at 22");
    const int n = m.n;
    std::vector<long long> s(n, 0);
    std::vector<int8_t> y(n, 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s[i] += m.at(i, j);

    auto value_of = [&] {
        long long v = 0;
        for (int i = 0; i < n; ++i) v += std::llabs(s[i]);
        return v;
    };

    GbResult best;
    best.value = value_of();
    best.y = y;
    for (uint64_t k = 1; k < (1ull << n); ++k) {
        int j = __builtin_ctzll(k);
        y[j] = static_cast<int8_t>(-y[j]);
        for (int i = 0; i < n; ++i) s[i] += 2 * m.at(i, j) * y[j];
        long long v = value_of();
        if (v > best.value) {
            best.value = v;
            best.y = y;
        }
    }
    // recover s for the best y, then majority rows
    std::fill(s.begin(), s.end(), 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s[i] += m.at(i, j) * best.y[j];
    best.x.resize(n);
    for (int i = 0; i < n; ++i) best.x[i] = s[i] >= 0 ? 1 : -1;
    return best;
}

// One round of the probabilistic strategy: uniform random y, then each row
// sign chosen by majority. The value sum_i |row_i . y| is never negative and
// averages (sqrt(2/pi) + o(1)) n^{3/2} over y.
inline GbResult gb_greedy(const SignMatrix& m, uint64_t seed) {
    const int n = m.n;
    SplitMix64 g(seed);
    GbResult r;
    r.y.resize(n);
    for (auto& v : r.y) v = static_cast<int8_t>(g.sign());
    r.x.resize(n);
    for (int i = 0; i < n; ++i) {
        long long s = 0;
        for (int j = 0; j < n; ++j) s += m.at(i, j) * r.y[j];
        r.x[i] = s >= 0 ? 1 : -1;
        r.value += std::llabs(s);
    }
    return r;
}

// Entrywise a'_ij = a_ij y_j. Relabels the column sign vectors, so the exact
// game value is unchanged.
inline SignMatrix negate_columns(const SignMatrix& m, const std::vector<int8_t>& y) {
    if (static_cast<int>(y.size()) != m.n) throw std::invalid_argument("negate_columns: wrong vector size");
    SignMatrix out = m;
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) out.at(i, j) = static_cast<int8_t>(m.at(i, j) * y[j]);
    return out;
}

// The a_{xu} matrix in dense integer form: rows are internal vertices of the
// right tree, columns of the left. Unlike the +-1 game the entries are small
// integers and mostly zero, which is what blocks a direct transfer of the
// Gale-Berlekamp bound; the summary quantifies that sparsity.
struct DecompositionExport {
    int dim = 0;                              // n - 1
    std::vector<int> row_vertex, col_vertex;  // ascending internal ids
    std::vector<long long> a;                 // row-major
    double zero_fraction = 0.0;
    long long total_sum = 0;                                // equals 2 cr(base) - C(n,2)
    std::vector<std::pair<int, long long>> special_row_sums; // (right vertex, row sum), odd each
};

inline DecompositionExport from_decomposition(const DecompositionMatrix& m) {
    DecompositionExport e;
    e.row_vertex = internal_vertices(m.base.tg.right);
    e.col_vertex = internal_vertices(m.base.tg.left);
    e.dim = static_cast<int>(e.row_vertex.size());
    e.a.reserve(static_cast<size_t>(e.dim) * e.dim);
    long long zeros = 0;
    for (int x : e.row_vertex)
        for (int u : e.col_vertex) {
            long long v = m.at(x, u);
            e.a.push_back(v);
            if (v == 0) ++zeros;
        }
    e.zero_fraction = e.a.empty() ? 0.0 : static_cast<double>(zeros) / static_cast<double>(e.a.size());
    e.total_sum = m.total_sum();
    for (int x : special_report(m.base.tg.right).special) e.special_row_sums.emplace_back(x, m.row_sum(x));
    return e;
}

// --- plain text matrix io ---------------------------------------------------

inline std::string to_text(const SignMatrix& m) {
    std::string out;
    for (int i = 0; i < m.n; ++i) {
        for (int j = 0; j < m.n; ++j) {
            if (j) out += ' ';
            out += m.at(i, j) > 0 ? "+1" : "-1";
        }
        out += '\n';
    }
    return out;
}

inline SignMatrix parse_sign_matrix(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::vector<int8_t> entries;
    std::string tok;
    while (in >> tok) {
        if (tok == "+1" || tok == "1")
            entries.push_back(1);
        else if (tok == "-1")
            entries.push_back(-1);
        else
            throw parse_error("sign matrix entries must be +1 or -1, got '" + tok + "'");
    }
    int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(entries.size()))));
    if (n < 1 || static_cast<size_t>(n) * n != entries.size())
        throw parse_error("sign matrix must be square");
    SignMatrix m = make_sign_matrix(n);
    m.a = std::move(entries);
    return m;
}

} // namespace tgl
