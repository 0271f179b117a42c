#pragma once

// Description of the base global function field K = F_q(C).  Genus 0 is the
// rational function field and is handled concretely through F_q[T]; higher
// genus curves are supplied as data: numerator of the zeta function, place
// counts by degree, and a table of Riemann-Roch dimensions for the finitely
// many divisor classes the general bound does not cover.

#include "hkzeta/exact.hpp"
#include "hkzeta/fq.hpp"

#include <map>
#include <string>
#include <vector>

namespace hkzeta {

struct CurveData {
  FieldPtr field;                 // constant field F_q
  int genus = 0;
  std::vector<Int> Lcoeffs = {1};  // numerator L(T), degree 2g, L(0) = 1
  // number of places of each degree 1,2,...; empty means "derive from
  // F_q[T]" and is only valid for genus 0
  std::vector<long long> place_counts;
  // ell(D) for effective D with deg <= 2g - 2, keyed by Divisor::str()
  std::map<std::string, int> ell_table;

  int q() const { return field->q(); }
  bool concrete() const { return genus == 0 && place_counts.empty(); }

  Int class_number() const {  // h_K = L(1)
    Int h = 0;
    for (const Int& c : Lcoeffs) h += c;
    return h;
  }

  long long places_of_degree(int d) const {
    if (!place_counts.empty()) {
      if (d < 1 || d > (int)place_counts.size())
        throw std::domain_error("CurveData: place count for degree " +
                                std::to_string(d) + " not supplied");
      return place_counts[d - 1];
    }
    // F_q(T): the place at infinity plus monic irreducibles
    long long n = (long long)monic_irreducibles(field, d).size();
    if (d == 1) n += 1;
    return n;
  }

  void validate() const {
    if (!field) throw std::domain_error("CurveData: missing field");
    if ((int)Lcoeffs.size() != 2 * genus + 1 || Lcoeffs[0] != 1)
      throw std::domain_error("CurveData: L(T) must have degree 2g and L(0)=1");
    if (genus > 0 && place_counts.empty())
      throw std::domain_error("CurveData: genus > 0 needs explicit place counts");
  }
};

inline CurveData rational_curve(int q) {
  CurveData C;
  C.field = make_field(q);
  return C;
}

}  // namespace hkzeta
