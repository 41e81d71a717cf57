#include "semicech/free_vector.hpp"

#include "semicech/errors.hpp"

namespace semicech {

FreeVector FreeVector::basis(const Scenario& s, const JointEvent& event, const Element& coefficient) {
  FreeVector v(event.domain);
  if (coefficient != 0) v.terms_.emplace(s.rank(event), coefficient);
  return v;
}

Element FreeVector::coefficient(std::uint64_t rank) const {
  auto it = terms_.find(rank);
  return it == terms_.end() ? Element(0) : it->second;
}

void FreeVector::accumulate(const SemiringSpec& r, std::uint64_t rank, const Element& value) {
  auto it = terms_.find(rank);
  Element next = r.add(it == terms_.end() ? r.zero() : it->second, value);
  if (r.is_zero(next)) {
    if (it != terms_.end()) terms_.erase(it);
  } else if (it == terms_.end()) {
    terms_.emplace(rank, std::move(next));
  } else {
    it->second = std::move(next);
  }
}

Element FreeVector::mass(const SemiringSpec& r) const {
  Element total = r.zero();
  for (const auto& [rank, c] : terms_) total = r.add(total, c);
  return total;
}

FreeVector add(const SemiringSpec& r, const FreeVector& a, const FreeVector& b) {
  if (a.domain() != b.domain()) throw NotSubset("adding vectors over different measurement sets");
  FreeVector out = a;
  for (const auto& [rank, c] : b.terms()) out.accumulate(r, rank, c);
  return out;
}

FreeVector scale(const SemiringSpec& r, const Element& scalar, const FreeVector& v) {
  FreeVector out(v.domain());
  for (const auto& [rank, c] : v.terms()) out.accumulate(r, rank, r.mul(scalar, c));
  return out;
}

FreeVector subtract(const SemiringSpec& r, const FreeVector& a, const FreeVector& b) {
  if (a.domain() != b.domain()) throw NotSubset("subtracting vectors over different measurement sets");
  FreeVector out = a;
  for (const auto& [rank, c] : b.terms()) out.accumulate(r, rank, r.negate(c));
  return out;
}

FreeVector push_vector(const Scenario& s, const SemiringSpec& r, const FreeVector& v, MeasurementSet target) {
  if (!target.subset_of(v.domain())) throw NotSubset("push target is not a subset of the vector's domain");
  FreeVector out(target);
  for (const auto& [rank, c] : v.terms()) {
    out.accumulate(r, s.restrict_rank(v.domain(), rank, target), c);
  }
  return out;
}

}  // namespace semicech
