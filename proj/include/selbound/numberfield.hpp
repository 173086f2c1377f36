#pragma once

#include <map>
#include <memory>
#include <mutex>

#include "selbound/factorq.hpp"
#include "selbound/order.hpp"
#include "selbound/sturm.hpp"

namespace selbound::numberfields {

using arith::qpoly;
using arith::root_interval;
using arith::zmat;
using arith::zpoly;

struct prime_ideal {
    zint p;
    long e = 1;
    int f = 1;
    qpoly second_gen;   // two-element representation (p, second_gen(theta))
    zmat hnf_basis;     // rows: Z-basis of the ideal w.r.t. the integral basis
    zint norm() const { return zpow(p, static_cast<unsigned long>(f)); }
};

class number_field {
  public:
    zpoly poly;          // monic integral irreducible
    zint poly_disc;
    zmat basis_num;      // integral basis rows over the power basis, scaled by basis_den
    zint basis_den;
    zint field_disc;
    zint index;          // [O_L : Z[theta]]
    std::vector<root_interval> real_roots;  // embeddings, ascending
    int r1 = 0, r2 = 0;
    algebra O;           // multiplication table of the maximal order

    int degree() const { return poly.deg(); }

    // split of O (x) Z_p, cached; N <= 0 means the disc-based default
    std::shared_ptr<const split_result> split(const zint& p, long N = 0) const;

    // power-basis rational coordinates -> integral-basis coordinates
    std::vector<qrat> to_O_coords(const qpoly& el) const;
    // v_P(el) for nonzero el (P identified by (p, component index))
    long valuation(const qpoly& el, const zint& p, int comp_index) const;

  private:
    mutable std::mutex cache_mu_;
    mutable std::map<std::pair<std::string, long>, std::shared_ptr<const split_result>> cache_;
};

std::shared_ptr<const number_field> make_number_field(const zpoly& f);

std::vector<prime_ideal> factor_prime(const number_field& L, const zint& p);

// Exact sign of el(theta) at the j-th real embedding; el must be nonzero.
int sign_at_real_embedding(const number_field& L, const qpoly& el, size_t j);

// N_{L/Q}(el(theta)) for monic defining polynomials.
qrat field_norm(const number_field& L, const qpoly& el);

enum class split_kind { inert, totally_ramified, other };

struct etale_algebra {
    qpoly p;                          // the defining squarefree polynomial
    std::vector<std::shared_ptr<const number_field>> factors;
    int degree() const { return p.deg(); }
};

etale_algebra make_etale(const qpoly& p);

struct splitting_report {
    std::vector<split_kind> per_factor;
    bool eligible = false;  // every factor inert or totally ramified
};
splitting_report splitting_type(const etale_algebra& A, const zint& q);

// disc(p) / prod field_disc_i as a factored positive integer (it equals the
// square of the index of Z[x]/(p) in the maximal order times cross terms).
std::map<zint, long> disc_quotient(const etale_algebra& A);

}  // namespace selbound::numberfields
