#pragma once

#include "jcs/conformal.hpp"

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace jcs {

inline const char* variety_name(Variety v) {
    switch (v) {
    case Variety::jordan: return "jordan";
    case Variety::lie: return "lie";
    case Variety::associative: return "associative";
    default: return "other";
    }
}

inline Variety variety_from_name(const std::string& s) {
    if (s == "jordan") return Variety::jordan;
    if (s == "lie") return Variety::lie;
    if (s == "associative") return Variety::associative;
    return Variety::other;
}

/// Structured text document for a CAlgebra.  One line per table entry,
/// each term rendered as (coeff)[*d^a][*l^b]*SYM; the format is versioned
/// and bit-stable for fixed input.
inline std::string export_catalog(const CAlgebra& alg) {
    std::ostringstream out;
    out << "jcs-catalog 1\n";
    out << "name " << alg.name << "\n";
    out << "rank " << alg.rank << "\n";
    out << "variety " << variety_name(alg.variety) << "\n";
    for (int i = 0; i < alg.rank; ++i)
        out << "basis " << alg.basis_names[i] << " " << alg.parity[i] << "\n";
    for (int i = 0; i < alg.rank; ++i) {
        for (int j = 0; j < alg.rank; ++j) {
            const FormalPoly& e = alg.table[i][j];
            if (e.is_zero()) continue;
            out << "entry " << alg.basis_names[i] << " " << alg.basis_names[j] << " =";
            bool first = true;
            for (const auto& [key, celem] : e.terms) {
                for (const auto& [idx, p] : celem.comps) {
                    for (int q = 0; q <= p.degree(); ++q) {
                        if (p.coeff(q).is_zero()) continue;
                        out << (first ? " " : " + ");
                        first = false;
                        out << "(" << p.coeff(q).str() << ")";
                        if (q == 1) out << "*d";
                        if (q > 1) out << "*d^" << q;
                        if (key[L1] == 1) out << "*l";
                        if (key[L1] > 1) out << "*l^" << static_cast<int>(key[L1]);
                        out << "*" << alg.basis_names[idx];
                    }
                }
            }
            out << "\n";
        }
    }
    out << "end\n";
    return out.str();
}

namespace detail {

inline Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(Int(s));
    return Rat(Int(s.substr(0, slash))) / Rat(Int(s.substr(slash + 1)));
}

/// Accepts "a", "bi", "a+bi", "a-bi" with rational a, b ("i", "-i" too).
inline FieldElem parse_field(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("catalog: empty coefficient");
    if (s.back() != 'i') return FieldElem(parse_rat(s));
    std::string body = s.substr(0, s.size() - 1);
    // split at the last +/- that is not in position 0
    std::size_t split = std::string::npos;
    for (std::size_t p = body.size(); p-- > 1;) {
        if ((body[p] == '+' || body[p] == '-') && body[p - 1] != '/') {
            split = p;
            break;
        }
    }
    std::string re = "0", im;
    if (split == std::string::npos) {
        im = body;
    } else {
        re = body.substr(0, split);
        im = body.substr(split);
        if (im == "+") im = "1";
        if (im == "-") im = "-1";
        else if (im[0] == '+') im = im.substr(1);
    }
    if (im.empty() || im == "+") im = "1";
    if (im == "-") im = "-1";
    return FieldElem(parse_rat(re), parse_rat(im));
}

} // namespace detail

/// Parses a catalog document back into an algebra; unknown lines and
/// malformed terms are hard errors.
inline CAlgebraPtr import_catalog(const std::string& doc) {
    std::istringstream in(doc);
    std::string line;
    if (!std::getline(in, line) || line != "jcs-catalog 1")
        throw std::invalid_argument("catalog: bad header");
    auto alg = std::make_shared<CAlgebra>();
    std::map<std::string, int> index;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line == "end") break;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "name") {
            ls >> alg->name;
        } else if (tag == "rank") {
            ls >> alg->rank;
        } else if (tag == "variety") {
            std::string v;
            ls >> v;
            alg->variety = variety_from_name(v);
        } else if (tag == "basis") {
            std::string nm;
            int par;
            ls >> nm >> par;
            index[nm] = static_cast<int>(alg->basis_names.size());
            alg->basis_names.push_back(nm);
            alg->parity.push_back(par);
        } else if (tag == "entry") {
            if (alg->table.empty()) {
                if (static_cast<int>(alg->basis_names.size()) != alg->rank)
                    throw std::invalid_argument("catalog: basis lines do not match rank");
                alg->table.assign(alg->rank,
                                  std::vector<FormalPoly>(alg->rank, FormalPoly(alg.get())));
            }
            std::string a, b, eq;
            ls >> a >> b >> eq;
            if (eq != "=") throw std::invalid_argument("catalog: malformed entry line");
            std::string rest;
            std::getline(ls, rest);
            FormalPoly entry(alg.get());
            std::size_t pos = 0;
            while (pos < rest.size()) {
                while (pos < rest.size() && (rest[pos] == ' ' || rest[pos] == '+')) ++pos;
                if (pos >= rest.size()) break;
                std::size_t next = rest.find(" + ", pos);
                std::string term = rest.substr(pos, next == std::string::npos ? next : next - pos);
                pos = next == std::string::npos ? rest.size() : next + 3;
                // (coeff)[*d^a][*l^b]*SYM
                if (term.front() != '(') throw std::invalid_argument("catalog: bad term " + term);
                std::size_t close = term.find(')');
                FieldElem coeff = detail::parse_field(term.substr(1, close - 1));
                int dpow = 0, lpow = 0;
                std::string sym;
                std::size_t p = close + 1;
                while (p < term.size()) {
                    if (term[p] != '*') throw std::invalid_argument("catalog: bad term " + term);
                    ++p;
                    std::size_t q = term.find('*', p);
                    std::string tok = term.substr(p, q == std::string::npos ? q : q - p);
                    p = q == std::string::npos ? term.size() : q;
                    if (tok == "d") {
                        dpow = 1;
                    } else if (tok.rfind("d^", 0) == 0) {
                        dpow = std::stoi(tok.substr(2));
                    } else if (tok == "l") {
                        lpow = 1;
                    } else if (tok.rfind("l^", 0) == 0) {
                        lpow = std::stoi(tok.substr(2));
                    } else {
                        sym = tok;
                    }
                }
                auto it = index.find(sym);
                if (it == index.end())
                    throw std::invalid_argument("catalog: unknown basis symbol " + sym);
                VKey key = vkey_zero();
                key[L1] = static_cast<std::uint8_t>(lpow);
                entry.add_term(key, basis_elem(alg.get(), it->second, DPoly::d_power(dpow, coeff)));
            }
            if (!index.count(a) || !index.count(b))
                throw std::invalid_argument("catalog: entry for unknown basis symbol");
            alg->table[index[a]][index[b]] = std::move(entry);
        } else {
            throw std::invalid_argument("catalog: unknown line tag " + tag);
        }
    }
    if (alg->table.empty())
        alg->table.assign(alg->rank, std::vector<FormalPoly>(alg->rank, FormalPoly(alg.get())));
    return alg;
}

} // namespace jcs
