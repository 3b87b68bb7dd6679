#include "iafeas/exact.hpp"

#include <stdexcept>
#include <utility>

#include "iafeas/feasibility.hpp"

namespace iafeas {

MilnorBound milnor_h(const Scenario& scenario) {
    MilnorBound bound;
    mpz_class degree = 0;
    mpz_class tangent_terms = 0; // T = sum over edges of (M_l-d_l) d_k + (N_k-d_k) d_l
    for (const auto& [k, l] : scenario.edges) {
        const UserConfig& rx = scenario.users[k];
        const UserConfig& tx = scenario.users[l];
        degree += static_cast<long>(rx.streams) * tx.streams;
        tangent_terms += static_cast<long>(tx.tx_antennas - tx.streams) * rx.streams;
        tangent_terms += static_cast<long>(rx.rx_antennas - rx.streams) * tx.streams;
    }
    bound.degree = degree;

    mpz_class base = 2 * degree - 1;
    const mpz_class exponent = 2 * tangent_terms;
    mpz_class power;
    mpz_pow_ui(power.get_mpz_t(), base.get_mpz_t(), exponent.get_ui());
    bound.components = degree * power;
    bound.h = 8 * bound.components * tangent_terms;
    return bound;
}

namespace {

/// Gaussian integer with GMP limbs; the arithmetic below writes into
/// preallocated mpz objects to keep allocations off the elimination loop.
struct Zi {
    mpz_class re, im;

    bool is_zero() const { return mpz_sgn(re.get_mpz_t()) == 0 && mpz_sgn(im.get_mpz_t()) == 0; }

    std::size_t bits() const {
        return std::max(mpz_sizeinbase(re.get_mpz_t(), 2), mpz_sizeinbase(im.get_mpz_t(), 2));
    }
};

// out = a * b
void mul(Zi& out, const Zi& a, const Zi& b, mpz_class& t1, mpz_class& t2) {
    mpz_mul(t1.get_mpz_t(), a.re.get_mpz_t(), b.re.get_mpz_t());
    mpz_mul(t2.get_mpz_t(), a.im.get_mpz_t(), b.im.get_mpz_t());
    mpz_sub(t1.get_mpz_t(), t1.get_mpz_t(), t2.get_mpz_t());
    mpz_mul(t2.get_mpz_t(), a.re.get_mpz_t(), b.im.get_mpz_t());
    mpz_addmul(t2.get_mpz_t(), a.im.get_mpz_t(), b.re.get_mpz_t());
    mpz_swap(out.re.get_mpz_t(), t1.get_mpz_t());
    mpz_swap(out.im.get_mpz_t(), t2.get_mpz_t());
}

// out = a / b, exact in Z[i]: a * conj(b) / |b|^2 with exact integer divisions.
void divexact(Zi& out, const Zi& a, const Zi& b, mpz_class& norm, mpz_class& t1,
              mpz_class& t2, mpz_class& t3) {
    mpz_mul(norm.get_mpz_t(), b.re.get_mpz_t(), b.re.get_mpz_t());
    mpz_addmul(norm.get_mpz_t(), b.im.get_mpz_t(), b.im.get_mpz_t());

    mpz_mul(t1.get_mpz_t(), a.re.get_mpz_t(), b.re.get_mpz_t());
    mpz_addmul(t1.get_mpz_t(), a.im.get_mpz_t(), b.im.get_mpz_t());
    mpz_mul(t2.get_mpz_t(), a.im.get_mpz_t(), b.re.get_mpz_t());
    mpz_submul(t2.get_mpz_t(), a.re.get_mpz_t(), b.im.get_mpz_t());

    mpz_divexact(t3.get_mpz_t(), t1.get_mpz_t(), norm.get_mpz_t());
    mpz_swap(out.re.get_mpz_t(), t3.get_mpz_t());
    mpz_divexact(t3.get_mpz_t(), t2.get_mpz_t(), norm.get_mpz_t());
    mpz_swap(out.im.get_mpz_t(), t3.get_mpz_t());
}

} // namespace

int exact_rank(const RationalMatrix& matrix) {
    const int rows = matrix.rows();
    const int cols = matrix.cols();
    if (rows == 0 || cols == 0) return 0;

    // Clear denominators row by row (row scaling never changes rank), then
    // drop identically zero columns and rows.
    std::vector<std::vector<Zi>> m(rows);
    for (int i = 0; i < rows; ++i) {
        mpz_class common = 1;
        for (int j = 0; j < cols; ++j)
            mpz_lcm(common.get_mpz_t(), common.get_mpz_t(),
                    matrix(i, j).denom.get_mpz_t());
        m[i].resize(cols);
        for (int j = 0; j < cols; ++j) {
            const GaussianRational& q = matrix(i, j);
            mpz_class scale;
            mpz_divexact(scale.get_mpz_t(), common.get_mpz_t(), q.denom.get_mpz_t());
            m[i][j].re = q.real_num * scale;
            m[i][j].im = q.imag_num * scale;
        }
    }
    std::vector<int> live_cols;
    for (int j = 0; j < cols; ++j) {
        bool nonzero = false;
        for (int i = 0; i < rows && !nonzero; ++i) nonzero = !m[i][j].is_zero();
        if (nonzero) live_cols.push_back(j);
    }
    for (int i = 0; i < rows; ++i) {
        std::vector<Zi> compact;
        compact.reserve(live_cols.size());
        for (int j : live_cols) compact.push_back(std::move(m[i][j]));
        m[i] = std::move(compact);
    }
    const int ncols = static_cast<int>(live_cols.size());

    mpz_class t1, t2, t3, norm;
    Zi prev_pivot{1, 0};
    Zi prod, sub;
    int rank = 0;
    const int max_rank = std::min(rows, ncols);

    for (int step = 0; step < max_rank; ++step) {
        // Pivot: nonzero entry of minimal bit size in the remaining block.
        int pr = -1, pc = -1;
        std::size_t best = SIZE_MAX;
        for (int i = step; i < rows; ++i) {
            for (int j = step; j < ncols; ++j) {
                if (m[i][j].is_zero()) continue;
                const std::size_t b = m[i][j].bits();
                if (b < best) {
                    best = b;
                    pr = i;
                    pc = j;
                }
            }
        }
        if (pr < 0) break;
        std::swap(m[step], m[pr]);
        if (pc != step)
            for (int i = 0; i < rows; ++i) std::swap(m[i][step], m[i][pc]);

        const Zi& pivot = m[step][step];
        for (int i = step + 1; i < rows; ++i) {
            if (m[i][step].is_zero() && step > 0) {
                // Still must rescale the row to keep the minor identity exact.
                for (int j = step + 1; j < ncols; ++j) {
                    mul(prod, m[i][j], pivot, t1, t2);
                    divexact(m[i][j], prod, prev_pivot, norm, t1, t2, t3);
                }
                continue;
            }
            for (int j = step + 1; j < ncols; ++j) {
                mul(prod, m[i][j], pivot, t1, t2);
                mul(sub, m[i][step], m[step][j], t1, t2);
                mpz_sub(prod.re.get_mpz_t(), prod.re.get_mpz_t(), sub.re.get_mpz_t());
                mpz_sub(prod.im.get_mpz_t(), prod.im.get_mpz_t(), sub.im.get_mpz_t());
                if (step == 0) {
                    m[i][j] = prod;
                } else {
                    divexact(m[i][j], prod, prev_pivot, norm, t1, t2, t3);
                }
            }
            m[i][step] = Zi{0, 0};
        }
        prev_pivot.re = pivot.re;
        prev_pivot.im = pivot.im;
        ++rank;
    }
    return rank;
}

RationalMatrix build_theta_exact(const Scenario& scenario, const CanonicalTriple& triple) {
    const auto [rx, tx] = projections(scenario);

    std::map<int, int> rx_offset, tx_offset;
    int cols = 0;
    for (int k : rx) {
        rx_offset[k] = cols;
        cols += scenario.users[k].streams * scenario.users[k].rx_antennas;
    }
    for (int l : tx) {
        tx_offset[l] = cols;
        cols += scenario.users[l].streams * scenario.users[l].tx_antennas;
    }
    int rows = 0;
    for (const auto& [k, l] : scenario.edges)
        rows += scenario.users[k].streams * scenario.users[l].streams;

    RationalMatrix theta(rows, cols);
    int row = 0;
    for (const Edge& e : scenario.edges) {
        const auto& [k, l] = e;
        const int dk = scenario.users[k].streams;
        const int dl = scenario.users[l].streams;
        const int nk = scenario.users[k].rx_antennas;
        const int ml = scenario.users[l].tx_antennas;
        const RationalMatrix& h = triple.channels.at(e);

        // Row (a, b) of the block carries the derivative of residual entry
        // (a, b), stored in column-major order: r = row + a + b * dk.
        //
        // Decoder block K_{dl,dk} (I_{dk} kron V^T H^T) acting on vec(Udot_k):
        // entry (a,b) of Udot^T H V is sum_p Udot(p, a) H(p, :) V(:, b); with
        // V = [I; 0] this is sum_p Udot(p, a) H(p, b), numerators scaled by h.
        for (int a = 0; a < dk; ++a)
            for (int b = 0; b < dl; ++b)
                for (int p = 0; p < nk; ++p) {
                    GaussianRational& out =
                        theta(row + a + b * dk, rx_offset[k] + p + a * nk);
                    out.real_num = h(p, b).real_num;
                    out.imag_num = h(p, b).imag_num;
                }
        // Precoder block I_{dl} kron U^T H acting on vec(Vdot_l): entry (a,b)
        // of U^T H Vdot is sum_q H(a, q) Vdot(q, b) with U = [I; 0].
        for (int a = 0; a < dk; ++a)
            for (int b = 0; b < dl; ++b)
                for (int q = 0; q < ml; ++q) {
                    GaussianRational& out =
                        theta(row + a + b * dk, tx_offset[l] + q + b * ml);
                    out.real_num = h(a, q).real_num;
                    out.imag_num = h(a, q).imag_num;
                }
        row += dk * dl;
    }
    return theta;
}

mpz_class default_exact_grid() {
    mpz_class h;
    mpz_ui_pow_ui(h.get_mpz_t(), 2, 20);
    return h;
}

ExactVerdict exact_feasibility_test(const Scenario& scenario, const mpz_class& h,
                                    int repetitions, RandomSeed seed) {
    if (repetitions < 1)
        throw std::invalid_argument("exact_feasibility_test: repetitions must be >= 1");
    if (h < 1) throw std::invalid_argument("exact_feasibility_test: h must be >= 1");

    ExactVerdict verdict;
    verdict.s = compute_s(scenario);
    verdict.repetitions = repetitions;
    verdict.h_used = h;
    verdict.theoretical_h = milnor_h(scenario).h;

    if (scenario.edges.empty()) {
        verdict.feasible = true;
        return verdict;
    }
    if (verdict.s < 0) {
        verdict.feasible = false;
        return verdict;
    }
    // A stream count exceeding its antenna slot makes the theta matrix
    // rank-deficient for every triple, so the answer is already settled (and
    // the canonical structured triple would not even exist).
    const auto [rx, tx] = projections(scenario);
    for (int k : rx)
        if (scenario.users[k].streams > scenario.users[k].rx_antennas) return verdict;
    for (int l : tx)
        if (scenario.users[l].streams > scenario.users[l].tx_antennas) return verdict;

    int full_rank = 0;
    for (const auto& [k, l] : scenario.edges)
        full_rank += scenario.users[k].streams * scenario.users[l].streams;

    for (int rep = 0; rep < repetitions; ++rep) {
        const CanonicalTriple triple =
            canonical_triple(scenario, h, derive_seed(seed, 0x2000 + rep));
        const RationalMatrix theta = build_theta_exact(scenario, triple);
        const bool surjective = exact_rank(theta) == full_rank;
        verdict.feasible_claims.push_back(surjective);
        if (surjective) { // one witness settles it
            verdict.feasible = true;
            return verdict;
        }
    }
    verdict.feasible = false;
    return verdict;
}

} // namespace iafeas
