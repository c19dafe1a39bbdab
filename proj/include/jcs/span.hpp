#pragma once

#include "jcs/conformal.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace jcs {

struct BoundExceeded : std::runtime_error {
    int needed;
    explicit BoundExceeded(int n)
        : std::runtime_error("span solve: d-degree bound exceeded (needs " + std::to_string(n) +
                             ")"),
          needed(n) {}
};

/// Exact F-linear view of the F[d]-span of a generator list: coordinates
/// are flattened as (basis index, d-power <= bound) and the span of
/// { d^j g_k } is kept in reduced row echelon form with bookkeeping, so a
/// membership query returns F[d]-coefficients over the original
/// generators.
class FlatSpan {
public:
    FlatSpan(const CAlgebra* alg, std::vector<CElem> gens, int bound)
        : alg_(alg), gens_(std::move(gens)), bound_(bound), ncols_(alg->rank * (bound + 1)) {
        for (std::size_t k = 0; k < gens_.size(); ++k) {
            int gdeg = elem_degree(gens_[k]);
            for (int j = 0; j + gdeg <= bound_; ++j) {
                std::vector<DPoly> expr(gens_.size());
                expr[k] = DPoly::d_power(j);
                insert(flatten_or_throw(gens_[k].d_shift(j)), std::move(expr));
            }
        }
        back_reduce();
    }

    const CAlgebra* alg() const { return alg_; }
    int bound() const { return bound_; }
    const std::vector<CElem>& gens() const { return gens_; }
    std::size_t f_rank() const { return rows_.size(); }

    static int elem_degree(const CElem& x) {
        int d = 0;
        for (const auto& [i, p] : x.comps) d = std::max(d, p.degree());
        return d;
    }

    /// F[d]-coefficients over the generators if the element lies in the
    /// span; throws BoundExceeded when the element cannot be flattened.
    std::optional<std::vector<DPoly>> solve(const CElem& x) const {
        std::vector<FieldElem> v = flatten_or_throw(x);
        std::vector<DPoly> coeffs(gens_.size());
        for (std::size_t r : order_) {
            const FieldElem f = v[pivot_[r]];
            if (f.is_zero()) continue;
            for (int c = 0; c < ncols_; ++c)
                if (!rows_[r][c].is_zero()) v[c] -= f * rows_[r][c];
            for (std::size_t k = 0; k < gens_.size(); ++k)
                if (!expr_[r][k].is_zero()) coeffs[k] += f * expr_[r][k];
        }
        for (const auto& c : v)
            if (!c.is_zero()) return std::nullopt;
        return coeffs;
    }

    bool contains(const CElem& x) const { return solve(x).has_value(); }

private:
    std::vector<FieldElem> flatten_or_throw(const CElem& x) const {
        std::vector<FieldElem> v(ncols_, FieldElem(0));
        for (const auto& [i, p] : x.comps) {
            if (p.degree() > bound_) throw BoundExceeded(p.degree());
            for (int q = 0; q <= p.degree(); ++q) v[i * (bound_ + 1) + q] = p.coeff(q);
        }
        return v;
    }

    // Every stored row has its pivot as first nonzero column, so reducing
    // in ascending pivot order is a correct forward elimination.
    void insert(std::vector<FieldElem> v, std::vector<DPoly> expr) {
        for (std::size_t r : order_) {
            const FieldElem f = v[pivot_[r]];
            if (f.is_zero()) continue;
            for (int c = 0; c < ncols_; ++c)
                if (!rows_[r][c].is_zero()) v[c] -= f * rows_[r][c];
            for (std::size_t k = 0; k < expr.size(); ++k)
                if (!expr_[r][k].is_zero()) expr[k] -= f * expr_[r][k];
        }
        int p = -1;
        for (int c = 0; c < ncols_; ++c)
            if (!v[c].is_zero()) {
                p = c;
                break;
            }
        if (p < 0) return;
        FieldElem inv = v[p].inv();
        for (auto& c : v) c = inv * c;
        for (auto& e : expr) e = inv * e;
        rows_.push_back(std::move(v));
        expr_.push_back(std::move(expr));
        pivot_.push_back(p);
        order_.push_back(rows_.size() - 1);
        std::sort(order_.begin(), order_.end(),
                  [this](std::size_t a, std::size_t b) { return pivot_[a] < pivot_[b]; });
    }

    void back_reduce() {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            for (std::size_t s = 0; s < rows_.size(); ++s) {
                if (s == r) continue;
                const FieldElem f = rows_[r][pivot_[s]];
                if (f.is_zero()) continue;
                for (int c = 0; c < ncols_; ++c)
                    if (!rows_[s][c].is_zero()) rows_[r][c] -= f * rows_[s][c];
                for (std::size_t k = 0; k < gens_.size(); ++k)
                    if (!expr_[s][k].is_zero()) expr_[r][k] -= f * expr_[s][k];
            }
        }
    }

    const CAlgebra* alg_;
    std::vector<CElem> gens_;
    int bound_;
    int ncols_;
    std::vector<std::vector<FieldElem>> rows_;
    std::vector<int> pivot_;
    std::vector<std::vector<DPoly>> expr_;
    std::vector<std::size_t> order_; // row indices sorted by pivot column
};

/// Hermite-style reduction of an F[d]-generator list to an independent
/// echelon basis: distinct leading coordinates, monic leading entries.
inline std::vector<CElem> hermite_reduce(std::vector<CElem> rows) {
    auto lead = [](const CElem& x) { return x.comps.begin()->first; };
    std::vector<CElem> work;
    for (auto& r : rows)
        if (!r.is_zero()) work.push_back(std::move(r));
    bool changed = true;
    while (changed) {
        changed = false;
        std::sort(work.begin(), work.end(), [&](const CElem& a, const CElem& b) {
            if (lead(a) != lead(b)) return lead(a) < lead(b);
            return a.comps.begin()->second.degree() < b.comps.begin()->second.degree();
        });
        for (std::size_t i = 0; i + 1 < work.size(); ++i) {
            if (lead(work[i]) != lead(work[i + 1])) continue;
            // same leading coordinate: Euclidean step
            const DPoly& p = work[i].comps.begin()->second;
            const DPoly& q = work[i + 1].comps.begin()->second;
            DPoly quot = q.divmod(p).first;
            CElem next = work[i + 1] - quot * work[i];
            if (next.is_zero()) {
                work.erase(work.begin() + i + 1);
            } else {
                work[i + 1] = std::move(next);
            }
            changed = true;
            break;
        }
    }
    // monic pivots, then clear pivot coordinates above
    for (auto& r : work) {
        FieldElem inv = r.comps.begin()->second.coeffs().back().inv();
        r = inv * r;
    }
    for (std::size_t i = 0; i < work.size(); ++i) {
        for (std::size_t j = i + 1; j < work.size(); ++j) {
            int lj = lead(work[j]);
            auto it = work[i].comps.find(lj);
            if (it == work[i].comps.end()) continue;
            DPoly quot = it->second.divmod(work[j].comps.begin()->second).first;
            if (!quot.is_zero()) work[i] -= quot * work[j];
        }
    }
    return work;
}

/// Reduced F[d]-independent basis of a generator family, plus the degree
/// bound that membership solving uses.
struct SpanBasis {
    std::vector<CElem> gens;
    std::vector<CElem> reduced;
    int bound_used = 0;

    int even_rank(const CAlgebra* alg) const { return parity_rank(alg, 0); }
    int odd_rank(const CAlgebra* alg) const { return parity_rank(alg, 1); }

private:
    int parity_rank(const CAlgebra* alg, int p) const {
        int n = 0;
        for (const auto& r : reduced) {
            auto pr = parity_of(r);
            if (pr && *pr == p) ++n;
        }
        return n;
    }
};

struct ClosureResult {
    SpanBasis basis;
    bool closed = true;
    std::string offending;
};

inline int table_max_ddeg(const CAlgebra* alg) {
    int d = 0;
    for (const auto& row : alg->table)
        for (const auto& e : row)
            for (const auto& [k, c] : e.terms) d = std::max(d, FlatSpan::elem_degree(c));
    return d;
}

inline int default_closure_bound(const CAlgebra* alg, const std::vector<CElem>& gens) {
    int g = 0;
    for (const auto& x : gens) g = std::max(g, FlatSpan::elem_degree(x));
    return table_max_ddeg(alg) + g + 2;
}

/// Closure certificate: every pairwise lambda-product of the reduced basis
/// re-enters the span.  The d-degree bound is raised automatically once on
/// overflow; a second overflow is an error (never silently truncated).
inline ClosureResult span_closure(const std::vector<CElem>& gens, const CAlgebra* alg,
                                  int bound = -1) {
    ClosureResult out;
    out.basis.gens = gens;
    out.basis.reduced = hermite_reduce(gens);
    if (bound < 0) bound = default_closure_bound(alg, out.basis.reduced);
    bool raised = false;
    for (;;) {
        out.basis.bound_used = bound;
        FlatSpan span(alg, out.basis.reduced, bound);
        out.closed = true;
        out.offending.clear();
        try {
            for (std::size_t i = 0; i < out.basis.reduced.size() && out.closed; ++i) {
                for (std::size_t j = 0; j < out.basis.reduced.size() && out.closed; ++j) {
                    FormalPoly p = lprod(out.basis.reduced[i], L1, out.basis.reduced[j]);
                    for (int k = 0; k <= p.max_degree(L1); ++k) {
                        FormalPoly ck = p.coeff_of(L1, k);
                        CElem c = celem_zero(alg);
                        for (const auto& [key, e] : ck.terms) c += e;
                        if (c.is_zero()) continue;
                        if (!span.contains(c)) {
                            out.closed = false;
                            out.offending = "product of reduced basis elements " +
                                            std::to_string(i) + "," + std::to_string(j) +
                                            " leaves the span at l^" + std::to_string(k) + ": " +
                                            celem_str(c);
                            break;
                        }
                    }
                }
            }
            return out;
        } catch (const BoundExceeded& e) {
            if (raised) throw;
            raised = true;
            bound = bound + e.needed + 2;
        }
    }
}

inline CElem formal_constant_to_celem(const FormalPoly& p, const char* who) {
    CElem out = celem_zero(p.alg);
    for (const auto& [k, c] : p.terms) {
        if (k != vkey_zero()) throw std::logic_error(std::string(who) + ": stray formal variable");
        out += c;
    }
    return out;
}

/// Structure table of a subfamily over its own F[d]-span: each
/// lambda-coefficient of each pairwise product is solved for in the basis.
/// The product comes from a callback so that induced (TKK-style) products
/// can be extracted the same way as plain restrictions.
template <class Product>
CAlgebraPtr extract_table(const CAlgebra* parent, const std::vector<CElem>& basis,
                          std::vector<std::string> names, std::vector<int> parities,
                          Variety variety, const std::string& name, Product&& product,
                          int bound = -1) {
    if (bound < 0) bound = default_closure_bound(parent, basis) + 2;
    for (bool raised = false;; raised = true) {
        try {
            return detail_extract_table(parent, basis, names, parities, variety, name, product,
                                        bound);
        } catch (const BoundExceeded& e) {
            if (raised) throw;
            bound = bound + e.needed + 2;
        }
    }
}

template <class Product>
CAlgebraPtr detail_extract_table(const CAlgebra* parent, const std::vector<CElem>& basis,
                                 std::vector<std::string> names, std::vector<int> parities,
                                 Variety variety, const std::string& name, Product&& product,
                                 int bound) {
    FlatSpan span(parent, basis, bound);
    auto alg = std::make_shared<CAlgebra>();
    alg->name = name;
    alg->rank = static_cast<int>(basis.size());
    alg->parity = std::move(parities);
    alg->basis_names = std::move(names);
    alg->variety = variety;
    alg->table.assign(alg->rank, std::vector<FormalPoly>(alg->rank, FormalPoly(alg.get())));
    for (int i = 0; i < alg->rank; ++i) {
        for (int j = 0; j < alg->rank; ++j) {
            FormalPoly p = product(basis[i], basis[j]);
            FormalPoly entry(alg.get());
            for (int k = 0; k <= p.max_degree(L1); ++k) {
                CElem c = formal_constant_to_celem(p.coeff_of(L1, k), "extract_table");
                if (c.is_zero()) continue;
                auto coeffs = span.solve(c);
                if (!coeffs)
                    throw std::runtime_error("extract_table(" + name + "): product " +
                                             alg->basis_names[i] + " , " + alg->basis_names[j] +
                                             " leaves the span at l^" + std::to_string(k));
                CElem img = celem_zero(alg.get());
                for (std::size_t l = 0; l < coeffs->size(); ++l)
                    if (!(*coeffs)[l].is_zero()) img.add_comp(static_cast<int>(l), (*coeffs)[l]);
                VKey key = vkey_zero();
                key[L1] = static_cast<std::uint8_t>(k);
                entry.add_term(key, img);
            }
            alg->table[i][j] = std::move(entry);
        }
    }
    return alg;
}

inline CAlgebraPtr extract_restriction_table(const CAlgebra* parent,
                                             const std::vector<CElem>& basis,
                                             std::vector<std::string> names,
                                             std::vector<int> parities, Variety variety,
                                             const std::string& name, int bound = -1) {
    return extract_table(
        parent, basis, std::move(names), std::move(parities), variety, name,
        [](const CElem& x, const CElem& y) { return lprod(x, L1, y); }, bound);
}

} // namespace jcs
