#ifndef G2CP_IGUSA_HPP
#define G2CP_IGUSA_HPP

#include <array>
#include <fstream>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include "g2cp/theta_naive.hpp"

namespace g2cp {

/// The ten even characteristic indices.
inline constexpr std::array<int, 10> kEvenIndices = {0, 1, 2, 3, 4, 6, 8, 9, 12, 15};

inline int even_slot(int idx) {
    for (int k = 0; k < 10; ++k)
        if (kEvenIndices[k] == idx) return k;
    throw InputError("not an even characteristic index: " + std::to_string(idx));
}

/// Squares of the ten even theta constants at Omega, indexed by T.
struct ThetaSquares {
    std::array<Complex, 10> s;

    const Complex& operator[](int idx) const { return s[even_slot(idx)]; }
    Complex& operator[](int idx) { return s[even_slot(idx)]; }
    const Complex& slot(int k) const { return s[k]; }
    Prec prec() const { return s[0].prec(); }
};

struct IgusaForms {
    Complex h4, h6, h10, h12;
};

struct InvariantTriple {
    Complex j1, j2, j3;
};

/// Duplication step: from the four fundamental values at Omega/2 to the ten
/// squared even values at Omega.  Homogeneous of degree 2 in the input.
inline ThetaSquares duplicate_squares(const ThetaQuadruple& t) {
    const Complex& a = t.t0;
    const Complex& b = t.t1;
    const Complex& c = t.t2;
    const Complex& d = t.t3;
    Complex aa = a.sqr(), bb = b.sqr(), cc = c.sqr(), dd = d.sqr();
    Complex ab = a * b, cd = c * d, ac = a * c, bd = b * d, ad = a * d, bc = b * c;
    ThetaSquares out;
    auto quarter = [](Complex z) { return z.mul_2si(-2); };
    out[0] = quarter(aa + bb + cc + dd);
    out[1] = quarter((ab + cd).mul_2si(1));
    out[2] = quarter((ac + bd).mul_2si(1));
    out[3] = quarter((ad + bc).mul_2si(1));
    out[4] = quarter(aa - bb + cc - dd);
    out[6] = quarter((ac - bd).mul_2si(1));
    out[8] = quarter(aa + bb - cc - dd);
    out[9] = quarter((ab - cd).mul_2si(1));
    out[12] = quarter(aa - bb - cc + dd);
    out[15] = quarter((ad - bc).mul_2si(1));
    return out;
}

/// Index tables for h6 (60 signed triples) and h12 (15 six-tuples), loaded
/// from the data directory and validated: indices in T, counts exact, h6
/// triples syzygous and distinct.
struct IgusaTables {
    struct Triple {
        int sign;
        std::array<int, 3> idx;
    };
    std::vector<Triple> h6;
    std::vector<std::array<int, 6>> h12;

    static const IgusaTables& instance(const std::string& dir = "");
};

namespace detail {

inline bool is_even_index(int i) {
    int a1 = (i >> 3) & 1, a2 = (i >> 2) & 1, b1 = (i >> 1) & 1, b2 = i & 1;
    return ((a1 * b1 + a2 * b2) & 1) == 0;
}

inline IgusaTables load_igusa_tables(const std::string& dir) {
    IgusaTables t;
    {
        std::ifstream in(dir + "/h6_triples.txt");
        if (!in) throw DataFileError("cannot open " + dir + "/h6_triples.txt");
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            std::istringstream ls(line);
            std::string sg;
            IgusaTables::Triple tr{};
            if (!(ls >> sg >> tr.idx[0] >> tr.idx[1] >> tr.idx[2]) || (sg != "+" && sg != "-"))
                throw DataFileError("bad h6 table line: " + line);
            tr.sign = sg == "+" ? 1 : -1;
            int x = tr.idx[0] ^ tr.idx[1] ^ tr.idx[2];
            for (int i : tr.idx) even_slot(i);
            if (!is_even_index(x) || tr.idx[0] == tr.idx[1] || tr.idx[1] == tr.idx[2])
                throw DataFileError("h6 triple not syzygous: " + line);
            t.h6.push_back(tr);
        }
        if (t.h6.size() != 60)
            throw DataFileError("h6 table must have 60 entries, got " +
                                std::to_string(t.h6.size()));
    }
    {
        std::ifstream in(dir + "/h12_tuples.txt");
        if (!in) throw DataFileError("cannot open " + dir + "/h12_tuples.txt");
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            std::istringstream ls(line);
            std::array<int, 6> tu{};
            for (int& v : tu)
                if (!(ls >> v)) throw DataFileError("bad h12 table line: " + line);
            int x = 0;
            for (int v : tu) {
                even_slot(v);
                x ^= v;
            }
            // complement of a Goepel quadruple: the six indices xor to the
            // xor of all ten even characteristics
            t.h12.push_back(tu);
        }
        if (t.h12.size() != 15)
            throw DataFileError("h12 table must have 15 entries, got " +
                                std::to_string(t.h12.size()));
    }
    return t;
}

}  // namespace detail

inline const IgusaTables& IgusaTables::instance(const std::string& dir) {
    static IgusaTables tables = detail::load_igusa_tables(
        dir.empty() ?
#ifdef G2CP_DATA_DIR
                    G2CP_DATA_DIR
#else
                    "data"
#endif
                    : dir);
    return tables;
}

/// The Siegel modular forms h4, h6, h10, h12 from squared theta values.
/// Everything is computed from squares: theta^4 = s^2, theta^8 = s^4.
inline IgusaForms igusa_h(const ThetaSquares& s) {
    const IgusaTables& tab = IgusaTables::instance();
    Prec p = s.prec();
    IgusaForms out{Complex(p), Complex(p), Complex(p), Complex(p)};
    std::array<Complex, 10> s2;  // theta^4
    for (int k = 0; k < 10; ++k) s2[k] = s.slot(k).sqr();
    for (int k = 0; k < 10; ++k) out.h4 += s2[k].sqr();
    out.h10 = s.slot(0);
    for (int k = 1; k < 10; ++k) out.h10 *= s.slot(k);
    for (const auto& tr : tab.h6) {
        Complex m = s2[even_slot(tr.idx[0])] * s2[even_slot(tr.idx[1])] *
                    s2[even_slot(tr.idx[2])];
        if (tr.sign > 0)
            out.h6 += m;
        else
            out.h6 -= m;
    }
    for (const auto& tu : tab.h12) {
        Complex m = s2[even_slot(tu[0])];
        for (int j = 1; j < 6; ++j) m *= s2[even_slot(tu[j])];
        out.h12 += m;
    }
    return out;
}

/// Streng's absolute invariants j1 = h4 h6 / h10, j2 = h4^2 h12 / h10^2,
/// j3 = h4^5 / h10^2.
inline InvariantTriple streng_j(const IgusaForms& h) {
    if (h.h10.is_zero())
        throw SingularSurface("h10 = 0: vanishing even theta constant");
    Complex h10sq = h.h10.sqr();
    Complex h4sq = h.h4.sqr();
    InvariantTriple out;
    out.j1 = h.h4 * h.h6 / h.h10;
    out.j2 = h4sq * h.h12 / h10sq;
    out.j3 = h4sq.sqr() * h.h4 / h10sq;
    return out;
}

/// Full pipeline step: invariants of Omega from its fundamental thetas.
inline InvariantTriple invariants_from_quadruple(const ThetaQuadruple& t) {
    return streng_j(igusa_h(duplicate_squares(t)));
}

inline InvariantTriple invariants_naive(const PeriodMatrix& omega, Prec N) {
    return invariants_from_quadruple(theta_fundamental(omega, N));
}

}  // namespace g2cp

#endif
