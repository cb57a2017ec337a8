#include "expmbt/pade.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace expmbt {

namespace {

using boost::multiprecision::cpp_rational;

Matrix scaled_identity_like(const Matrix& m, double s) {
    Matrix r(m.rows(), m.cols(), m.kind());
    for (Index i = 0; i < std::min(m.rows(), m.cols()); ++i) r.set(i, i, s);
    return r;
}

// c0*I + c1*P2 + c2*P4 (terms with empty matrices are skipped)
Matrix poly_even(const Matrix& shape_like, double c0, double c1, const Matrix& p2,
                 double c2 = 0.0, const Matrix& p4 = Matrix(),
                 double c3 = 0.0, const Matrix& p6 = Matrix()) {
    Matrix r = scaled_identity_like(shape_like, c0);
    r += c1 * p2;
    if (c2 != 0.0) r += c2 * p4;
    if (c3 != 0.0) r += c3 * p6;
    return r;
}

Matrix lincomb3(double c2, const Matrix& m2, double c4, const Matrix& m4,
                double c6, const Matrix& m6) {
    Matrix r = c2 * m2;
    if (c4 != 0.0) r += c4 * m4;
    if (c6 != 0.0) r += c6 * m6;
    return r;
}

} // namespace

bool is_supported_degree(int m) {
    return m == 3 || m == 5 || m == 7 || m == 9 || m == 13;
}

PadeCoeffs pade_coeffs(int m) {
    if (!is_supported_degree(m))
        throw Error("unsupported Pade degree " + std::to_string(m));
    PadeCoeffs pc;
    pc.m = m;
    pc.c.resize(static_cast<std::size_t>(m) + 1);
    cpp_rational ck(1);
    pc.c[0] = 1.0;
    for (int k = 1; k <= m; ++k) {
        ck *= cpp_rational(m - k + 1, (2 * m - k + 1) * static_cast<long long>(k));
        pc.c[static_cast<std::size_t>(k)] = ck.convert_to<double>();
    }
    return pc;
}

EvenPowers even_powers(const Matrix& m_in, int m, MatmulCounter* counter) {
    EvenPowers p;
    p.p2 = matmul(m_in, m_in, counter);
    if (m >= 5) p.p4 = matmul(p.p2, p.p2, counter);
    if (m == 13) p.p6 = matmul(p.p2, p.p4, counter);
    return p;
}

UVParts eval_uv(const Matrix& m_in, int m, const EvenPowers& powers,
                MatmulCounter* counter) {
    if (!is_supported_degree(m))
        throw Error("unsupported Pade degree " + std::to_string(m));
    const std::vector<double>& c = pade_coeffs(m).c;
    UVParts r;
    switch (m) {
        case 3:
            r.odd = poly_even(m_in, c[1], c[3], powers.p2);
            r.v = poly_even(m_in, c[0], c[2], powers.p2);
            break;
        case 5:
            r.odd = poly_even(m_in, c[1], c[3], powers.p2, c[5], powers.p4);
            r.v = poly_even(m_in, c[0], c[2], powers.p2, c[4], powers.p4);
            break;
        case 7:
            r.odd = matmul(poly_even(m_in, c[5], c[7], powers.p2), powers.p4, counter) +
                    poly_even(m_in, c[1], c[3], powers.p2);
            r.v = matmul(poly_even(m_in, c[4], c[6], powers.p2), powers.p4, counter) +
                  poly_even(m_in, c[0], c[2], powers.p2);
            break;
        case 9:
            r.odd = matmul(poly_even(m_in, c[5], c[7], powers.p2, c[9], powers.p4),
                           powers.p4, counter) +
                    poly_even(m_in, c[1], c[3], powers.p2);
            r.v = matmul(poly_even(m_in, c[4], c[6], powers.p2, c[8], powers.p4),
                         powers.p4, counter) +
                  poly_even(m_in, c[0], c[2], powers.p2);
            break;
        case 13:
            r.w1 = lincomb3(c[9], powers.p2, c[11], powers.p4, c[13], powers.p6);
            r.y1 = lincomb3(c[8], powers.p2, c[10], powers.p4, c[12], powers.p6);
            r.w = matmul(powers.p6, r.w1, counter) +
                  poly_even(m_in, c[1], c[3], powers.p2, c[5], powers.p4, c[7], powers.p6);
            r.u = matmul(m_in, r.w, counter);
            r.v = matmul(powers.p6, r.y1, counter) +
                  poly_even(m_in, c[0], c[2], powers.p2, c[4], powers.p4, c[6], powers.p6);
            return r;
    }
    r.u = matmul(m_in, r.odd, counter);
    return r;
}

MSequence m_sequence(const Matrix& a, const Matrix& b, const Matrix& e, int m,
                     const EvenPowers& pa, const EvenPowers& pb,
                     MatmulCounter* counter) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || e.rows() != a.rows() ||
        e.cols() != b.rows())
        throw DimensionError("m_sequence shape mismatch: " + shape_str(a) + ", " +
                             shape_str(b) + ", " + shape_str(e));
    MSequence s;
    s.m2 = matmul(a, e, counter) + matmul(e, b, counter);
    if (m >= 5)
        s.m4 = matmul(pa.p2, s.m2, counter) + matmul(s.m2, pb.p2, counter);
    if (m >= 7)
        s.m6 = matmul(pa.p4, s.m2, counter) + matmul(s.m4, pb.p2, counter);
    if (m == 9)
        s.m8 = matmul(pa.p4, s.m4, counter) + matmul(s.m4, pb.p4, counter);
    return s;
}

MSequence m_sequence(const Matrix& a, const Matrix& b, const Matrix& e,
                     bool need6) {
    int m = need6 ? 13 : 5;
    EvenPowers pa = even_powers(a, m);
    EvenPowers pb = even_powers(b, m);
    return m_sequence(a, b, e, m, pa, pb, nullptr);
}

LParts eval_L_uv(const Matrix& a, const Matrix& b, const Matrix& e, int m,
                 const EvenPowers& pa, const UVParts& uv_b, const MSequence& ms,
                 MatmulCounter* counter) {
    const std::vector<double>& c = pade_coeffs(m).c;
    LParts r;
    if (m == 13) {
        Matrix dw1 = lincomb3(c[9], ms.m2, c[11], ms.m4, c[13], ms.m6);
        Matrix dw2 = lincomb3(c[3], ms.m2, c[5], ms.m4, c[7], ms.m6);
        Matrix dy1 = lincomb3(c[8], ms.m2, c[10], ms.m4, c[12], ms.m6);
        Matrix dy2 = lincomb3(c[2], ms.m2, c[4], ms.m4, c[6], ms.m6);
        Matrix dw = matmul(pa.p6, dw1, counter) + matmul(ms.m6, uv_b.w1, counter) + dw2;
        r.du = matmul(a, dw, counter) + matmul(e, uv_b.w, counter);
        r.dv = matmul(pa.p6, dy1, counter) + matmul(ms.m6, uv_b.y1, counter) + dy2;
        return r;
    }
    // sum over k >= 1 of c_{2k+1} M_{2k} and c_{2k} M_{2k}
    Matrix odd_sum = c[3] * ms.m2;
    Matrix even_sum = c[2] * ms.m2;
    if (m >= 5) {
        odd_sum += c[5] * ms.m4;
        even_sum += c[4] * ms.m4;
    }
    if (m >= 7) {
        odd_sum += c[7] * ms.m6;
        even_sum += c[6] * ms.m6;
    }
    if (m == 9) {
        odd_sum += c[9] * ms.m8;
        even_sum += c[8] * ms.m8;
    }
    r.du = matmul(a, odd_sum, counter) + matmul(e, uv_b.odd, counter);
    r.dv = even_sum;
    return r;
}

SchemeOutput eval_scheme(const Matrix& a, const Matrix& b, const Matrix& e,
                         int m, MatmulCounter* counter) {
    EvenPowers pa = even_powers(a, m, counter);
    EvenPowers pb = even_powers(b, m, counter);
    MSequence ms = m_sequence(a, b, e, m, pa, pb, counter);
    UVParts uva = eval_uv(a, m, pa, counter);
    UVParts uvb = eval_uv(b, m, pb, counter);
    LParts l = eval_L_uv(a, b, e, m, pa, uvb, ms, counter);
    SchemeOutput out;
    out.ua = std::move(uva.u);
    out.va = std::move(uva.v);
    out.ub = std::move(uvb.u);
    out.vb = std::move(uvb.v);
    out.du = std::move(l.du);
    out.dv = std::move(l.dv);
    return out;
}

RationalSolveResult rational_solve(const SchemeOutput& s, SideHint hint,
                                   MatmulCounter* counter) {
    const Index n = s.ua.rows();
    const Index d = s.ub.rows();
    RationalSolveResult r;
    LUFactors fa = lu_factor(s.va - s.ua);
    LUFactors fb = lu_factor(s.vb - s.ub);
    r.x = lu_solve_factored(fa, s.ua + s.va);
    r.y = lu_solve_factored(fb, s.ub + s.vb);
    bool left = hint == SideHint::Left || (hint == SideHint::Auto && n <= d);
    if (left) {
        Matrix rhs = (s.du + s.dv) + matmul(s.du - s.dv, r.y, counter);
        r.d = lu_solve_factored(fa, rhs);
    } else {
        Matrix rhs = (s.du + s.dv) + matmul(r.x, s.du - s.dv, counter);
        r.d = lu_solve((s.vb - s.ub), rhs, SolveSide::Right);
    }
    return r;
}

} // namespace expmbt
