#include "eden/ff.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "eden/common.hpp"

namespace eden {

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

uint32_t ff_add(uint32_t p, uint32_t a, uint32_t b) {
    uint64_t s = static_cast<uint64_t>(a) + b;
    return static_cast<uint32_t>(s >= p ? s - p : s);
}

uint32_t ff_sub(uint32_t p, uint32_t a, uint32_t b) {
    return a >= b ? a - b : static_cast<uint32_t>(a + static_cast<uint64_t>(p) - b);
}

uint32_t ff_mul(uint32_t p, uint32_t a, uint32_t b) {
    return static_cast<uint32_t>(static_cast<uint64_t>(a) * b % p);
}

uint32_t ff_inv(uint32_t p, uint32_t a) {
    if (a == 0) throw decode_error("division by zero in GF(p)");
    uint32_t result = 1;
    uint32_t base = a;
    uint64_t e = p - 2;
    while (e) {
        if (e & 1) result = ff_mul(p, result, base);
        base = ff_mul(p, base, base);
        e >>= 1;
    }
    return result;
}

FFMatrix make_matrix(uint32_t p, size_t rows, size_t cols) {
    if (p >= (1u << 31) || !is_prime_u64(p)) throw decode_error("modulus must be a prime < 2^31");
    FFMatrix m;
    m.p = p;
    m.rows = rows;
    m.cols = cols;
    m.a.assign(rows * cols, 0);
    return m;
}

FFMatrix ff_identity(uint32_t p, size_t n) {
    FFMatrix m = make_matrix(p, n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

namespace {

struct RrefGeneric {
    FFMatrix r;
    std::vector<size_t> pivots;  // pivots[i] = pivot column of row i
};

RrefGeneric rref_generic(FFMatrix m) {
    const uint32_t p = m.p;
    std::vector<size_t> pivots;
    size_t pr = 0;
    for (size_t c = 0; c < m.cols && pr < m.rows; ++c) {
        size_t sel = m.rows;
        for (size_t i = pr; i < m.rows; ++i)
            if (m.at(i, c) != 0) {
                sel = i;
                break;
            }
        if (sel == m.rows) continue;
        if (sel != pr)
            for (size_t j = c; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(pr, j));
        uint32_t inv = ff_inv(p, m.at(pr, c));
        if (inv != 1)
            for (size_t j = c; j < m.cols; ++j) m.at(pr, j) = ff_mul(p, m.at(pr, j), inv);
        for (size_t i = 0; i < m.rows; ++i) {
            if (i == pr) continue;
            uint64_t f = m.at(i, c);
            if (!f) continue;
            uint64_t nf = p - f;
            for (size_t j = c; j < m.cols; ++j)
                m.at(i, j) = static_cast<uint32_t>((m.at(i, j) + nf * m.at(pr, j)) % p);
        }
        pivots.push_back(c);
        ++pr;
    }
    return {std::move(m), std::move(pivots)};
}

struct Packed2 {
    size_t rows = 0, cols = 0, words = 0;
    std::vector<uint64_t> bits;

    bool get(size_t i, size_t j) const { return (bits[i * words + j / 64] >> (j % 64)) & 1; }
    void set(size_t i, size_t j) { bits[i * words + j / 64] |= 1ull << (j % 64); }
};

Packed2 pack2(const FFMatrix& m) {
    Packed2 pk;
    pk.rows = m.rows;
    pk.cols = m.cols;
    pk.words = (m.cols + 63) / 64;
    pk.bits.assign(pk.rows * pk.words, 0);
    for (size_t i = 0; i < m.rows; ++i)
        for (size_t j = 0; j < m.cols; ++j)
            if (m.at(i, j)) pk.set(i, j);
    return pk;
}

struct RrefPacked {
    Packed2 r;
    std::vector<size_t> pivots;
};

RrefPacked rref_packed(Packed2 m) {
    std::vector<size_t> pivots;
    size_t pr = 0;
    for (size_t c = 0; c < m.cols && pr < m.rows; ++c) {
        size_t sel = m.rows;
        for (size_t i = pr; i < m.rows; ++i)
            if (m.get(i, c)) {
                sel = i;
                break;
            }
        if (sel == m.rows) continue;
        if (sel != pr)
            for (size_t w = 0; w < m.words; ++w)
                std::swap(m.bits[sel * m.words + w], m.bits[pr * m.words + w]);
        for (size_t i = 0; i < m.rows; ++i) {
            if (i == pr || !m.get(i, c)) continue;
            const uint64_t* src = &m.bits[pr * m.words];
            uint64_t* dst = &m.bits[i * m.words];
            for (size_t w = 0; w < m.words; ++w) dst[w] ^= src[w];
        }
        pivots.push_back(c);
        ++pr;
    }
    return {std::move(m), std::move(pivots)};
}

bool use_packed(const FFMatrix& m, ElimBackend backend) {
    if (backend == ElimBackend::Packed2) {
        if (m.p != 2) throw decode_error("packed backend requires p = 2");
        return true;
    }
    return backend == ElimBackend::Auto && m.p == 2;
}

// Kernel basis from an RREF accessor: unit at each free column.
template <typename Get>
std::vector<std::vector<uint32_t>> kernel_from_rref(uint32_t p, size_t cols,
                                                    const std::vector<size_t>& pivots, Get get) {
    std::vector<char> is_pivot(cols, 0);
    for (size_t c : pivots) is_pivot[c] = 1;
    std::vector<std::vector<uint32_t>> basis;
    for (size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<uint32_t> v(cols, 0);
        v[f] = 1;
        for (size_t i = 0; i < pivots.size(); ++i) {
            uint32_t val = get(i, f);
            if (val) v[pivots[i]] = p - val;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace

size_t ff_rank(const FFMatrix& m, ElimBackend backend) {
    if (use_packed(m, backend)) return rref_packed(pack2(m)).pivots.size();
    return rref_generic(m).pivots.size();
}

std::vector<std::vector<uint32_t>> kernel_basis(const FFMatrix& m, ElimBackend backend) {
    if (use_packed(m, backend)) {
        RrefPacked rp = rref_packed(pack2(m));
        return kernel_from_rref(m.p, m.cols, rp.pivots, [&](size_t i, size_t j) {
            return static_cast<uint32_t>(rp.r.get(i, j));
        });
    }
    RrefGeneric rg = rref_generic(m);
    return kernel_from_rref(m.p, m.cols, rg.pivots,
                            [&](size_t i, size_t j) { return rg.r.at(i, j); });
}

std::optional<std::vector<uint32_t>> ff_solve(const FFMatrix& m, const std::vector<uint32_t>& rhs) {
    if (rhs.size() != m.rows) throw decode_error("solve: rhs dimension mismatch");
    FFMatrix aug = make_matrix(m.p, m.rows, m.cols + 1);
    for (size_t i = 0; i < m.rows; ++i) {
        for (size_t j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols) = rhs[i] % m.p;
    }
    RrefGeneric rg = rref_generic(std::move(aug));
    std::vector<uint32_t> v(m.cols, 0);
    for (size_t i = 0; i < rg.pivots.size(); ++i) {
        if (rg.pivots[i] == m.cols) return std::nullopt;
        v[rg.pivots[i]] = rg.r.at(i, m.cols);
    }
    return v;
}

FFMatrix matmul(const FFMatrix& a, const FFMatrix& b) {
    if (a.p != b.p) throw decode_error("matmul: modulus mismatch");
    if (a.cols != b.rows) throw decode_error("matmul: dimension mismatch");
    const uint32_t p = a.p;
    uint64_t step = static_cast<uint64_t>(p - 1) * (p - 1);
    size_t chunk = step == 0 ? std::numeric_limits<size_t>::max()
                             : static_cast<size_t>(std::numeric_limits<uint64_t>::max() / step);
    if (chunk == 0) chunk = 1;
    FFMatrix out = make_matrix(p, a.rows, b.cols);
    std::vector<uint64_t> acc(b.cols);
    for (size_t i = 0; i < a.rows; ++i) {
        std::fill(acc.begin(), acc.end(), 0);
        size_t since = 0;
        for (size_t k = 0; k < a.cols; ++k) {
            uint64_t f = a.at(i, k);
            if (f) {
                const uint32_t* brow = &b.a[k * b.cols];
                for (size_t j = 0; j < b.cols; ++j) acc[j] += f * brow[j];
            }
            if (++since >= chunk) {
                for (size_t j = 0; j < b.cols; ++j) acc[j] %= p;
                since = 0;
            }
        }
        for (size_t j = 0; j < b.cols; ++j) out.at(i, j) = static_cast<uint32_t>(acc[j] % p);
    }
    return out;
}

std::vector<uint32_t> matvec(const FFMatrix& m, const std::vector<uint32_t>& v) {
    if (v.size() != m.cols) throw decode_error("matvec: dimension mismatch");
    FFMatrix col = make_matrix(m.p, m.cols, 1);
    for (size_t i = 0; i < v.size(); ++i) col.at(i, 0) = v[i] % m.p;
    FFMatrix out = matmul(m, col);
    return out.a;
}

FFMatrix transpose(const FFMatrix& m) {
    FFMatrix out = make_matrix(m.p, m.cols, m.rows);
    for (size_t i = 0; i < m.rows; ++i)
        for (size_t j = 0; j < m.cols; ++j) out.at(j, i) = m.at(i, j);
    return out;
}

FFMatrix vstack(const std::vector<FFMatrix>& blocks) {
    if (blocks.empty()) throw decode_error("vstack needs at least one block");
    size_t rows = 0;
    for (const FFMatrix& b : blocks) {
        if (b.cols != blocks[0].cols || b.p != blocks[0].p)
            throw decode_error("vstack: shape or modulus mismatch");
        rows += b.rows;
    }
    FFMatrix out = make_matrix(blocks[0].p, rows, blocks[0].cols);
    size_t r = 0;
    for (const FFMatrix& b : blocks) {
        std::copy(b.a.begin(), b.a.end(), out.a.begin() + static_cast<ptrdiff_t>(r * out.cols));
        r += b.rows;
    }
    return out;
}

FFMatrix columns_matrix(uint32_t p, size_t cols_len, const std::vector<std::vector<uint32_t>>& vs) {
    FFMatrix out = make_matrix(p, cols_len, vs.size());
    for (size_t j = 0; j < vs.size(); ++j) {
        if (vs[j].size() != cols_len) throw decode_error("columns_matrix: length mismatch");
        for (size_t i = 0; i < cols_len; ++i) out.at(i, j) = vs[j][i] % p;
    }
    return out;
}

std::vector<std::vector<uint32_t>> intersect_kernels(const std::vector<FFMatrix>& blocks) {
    if (blocks.empty()) throw decode_error("intersect_kernels needs at least one block");
    const size_t cols = blocks[0].cols;
    const uint32_t p = blocks[0].p;
    for (const FFMatrix& b : blocks)
        if (b.cols != cols || b.p != p)
            throw decode_error("intersect_kernels: shape or modulus mismatch");

    std::vector<std::vector<std::vector<uint32_t>>> kernels;
    kernels.reserve(blocks.size());
    for (const FFMatrix& b : blocks) {
        kernels.push_back(kernel_basis(b));
        if (kernels.back().empty()) return {};
    }
    std::vector<size_t> order(blocks.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t x, size_t y) { return kernels[x].size() < kernels[y].size(); });

    FFMatrix k = columns_matrix(p, cols, kernels[order[0]]);
    for (size_t idx = 1; idx < order.size() && k.cols > 0; ++idx) {
        FFMatrix c = matmul(blocks[order[idx]], k);
        std::vector<std::vector<uint32_t>> w = kernel_basis(c);
        if (w.empty()) return {};
        k = matmul(k, columns_matrix(p, k.cols, w));
    }
    std::vector<std::vector<uint32_t>> out;
    out.reserve(k.cols);
    for (size_t j = 0; j < k.cols; ++j) {
        std::vector<uint32_t> v(cols);
        for (size_t i = 0; i < cols; ++i) v[i] = k.at(i, j);
        out.push_back(std::move(v));
    }
    return out;
}

namespace {

// Remainder of a modulo monic b, coefficients lowest-first.
std::vector<uint32_t> poly_mod(uint32_t p, std::vector<uint32_t> a, const std::vector<uint32_t>& b) {
    size_t db = b.size() - 1;
    while (a.size() > db) {
        uint32_t lead = a.back();
        size_t shift = a.size() - 1 - db;
        if (lead) {
            for (size_t j = 0; j <= db; ++j)
                a[shift + j] = ff_sub(p, a[shift + j], ff_mul(p, lead, b[j]));
        }
        a.pop_back();
    }
    while (a.size() > 1 && a.back() == 0) a.pop_back();
    return a;
}

bool poly_is_zero(const std::vector<uint32_t>& a) {
    for (uint32_t c : a)
        if (c) return false;
    return true;
}

bool is_irreducible(uint32_t p, const std::vector<uint32_t>& poly) {
    size_t d = poly.size() - 1;
    if (d == 1) return true;
    // Trial division by every monic polynomial of degree 1..d/2.
    for (size_t e = 1; 2 * e <= d; ++e) {
        uint64_t count = 1;
        for (size_t i = 0; i < e; ++i) count *= p;
        for (uint64_t v = 0; v < count; ++v) {
            std::vector<uint32_t> div(e + 1, 0);
            div[e] = 1;
            uint64_t t = v;
            for (size_t i = 0; i < e; ++i) {
                div[i] = static_cast<uint32_t>(t % p);
                t /= p;
            }
            if (poly_is_zero(poly_mod(p, poly, div))) return false;
        }
    }
    return true;
}

}  // namespace

ExtField ExtField::make(uint32_t p, int d) {
    if (!is_prime_u64(p)) throw decode_error("extension base must be prime");
    if (d < 1 || d > 4) throw decode_error("extension degree must be in 1..4");
    if (d > 1 && p > 251) throw resource_cap_error("extension search capped at p <= 251");
    ExtField f;
    f.p = p;
    f.d = d;
    uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (uint64_t v = 0; v < count; ++v) {
        std::vector<uint32_t> poly(static_cast<size_t>(d) + 1, 0);
        poly[static_cast<size_t>(d)] = 1;
        uint64_t t = v;
        for (int i = 0; i < d; ++i) {
            poly[static_cast<size_t>(i)] = static_cast<uint32_t>(t % p);
            t /= p;
        }
        if (is_irreducible(p, poly)) {
            f.poly = std::move(poly);
            return f;
        }
    }
    throw decode_error("no irreducible polynomial found");
}

ExtScalar ext_zero(const ExtField& f) { return ExtScalar(static_cast<size_t>(f.d), 0); }

ExtScalar ext_one(const ExtField& f) {
    ExtScalar a = ext_zero(f);
    a[0] = 1;
    return a;
}

ExtScalar ext_add(const ExtField& f, const ExtScalar& a, const ExtScalar& b) {
    ExtScalar out(static_cast<size_t>(f.d));
    for (size_t i = 0; i < out.size(); ++i) out[i] = ff_add(f.p, a[i], b[i]);
    return out;
}

ExtScalar ext_mul(const ExtField& f, const ExtScalar& a, const ExtScalar& b) {
    size_t d = static_cast<size_t>(f.d);
    std::vector<uint32_t> prod(2 * d - 1, 0);
    for (size_t i = 0; i < d; ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < d; ++j)
            prod[i + j] = ff_add(f.p, prod[i + j], ff_mul(f.p, a[i], b[j]));
    }
    std::vector<uint32_t> red = poly_mod(f.p, std::move(prod), f.poly);
    red.resize(d, 0);
    return red;
}

bool ext_is_zero(const ExtScalar& a) { return poly_is_zero(a); }

FFMatrix regular_repr(const ExtField& f, const ExtScalar& a) {
    size_t d = static_cast<size_t>(f.d);
    FFMatrix m = make_matrix(f.p, d, d);
    ExtScalar cur = a;
    ExtScalar x = ext_zero(f);
    if (d > 1) x[1] = 1;
    for (size_t j = 0; j < d; ++j) {
        for (size_t i = 0; i < d; ++i) m.at(i, j) = cur[i];
        if (j + 1 < d) cur = ext_mul(f, cur, x);
    }
    return m;
}

}  // namespace eden
