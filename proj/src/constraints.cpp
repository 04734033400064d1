#include "latmatch/constraints.hpp"

#include <algorithm>

namespace latmatch {

namespace {

void sort_groups(std::vector<IdSet>& groups) {
  std::sort(groups.begin(), groups.end());
  groups.erase(std::unique(groups.begin(), groups.end()), groups.end());
}

bool has(const IdSet& t, const Id& x) { return t.count(x) != 0; }

void check_known(const IdSet& ids, const Poset& rep) {
  for (const auto& x : ids)
    if (!rep.contains(x)) throw Error(ErrorKind::UnknownElementId, "constraint argument '" + x + "' is unknown", {x});
}

}  // namespace

JoinConstraint& JoinConstraint::canonicalize() {
  sort_groups(alpha_groups);
  return *this;
}

IdSet JoinConstraint::alpha_ids() const {
  IdSet out;
  for (const auto& g : alpha_groups) out.insert(g.begin(), g.end());
  return out;
}

ComplementJoinConstraint& ComplementJoinConstraint::canonicalize() {
  sort_groups(alpha_c_groups);
  return *this;
}

bool eval_cnf(const std::vector<IdSet>& groups, const IdSet& t) {
  for (const auto& g : groups)
    if (std::none_of(g.begin(), g.end(), [&](const Id& x) { return has(t, x); })) return false;
  return true;
}

bool eval_dnf(const std::vector<IdSet>& groups, const IdSet& t) {
  for (const auto& g : groups)
    if (std::all_of(g.begin(), g.end(), [&](const Id& x) { return has(t, x); })) return true;
  return false;
}

JoinEval eval_join_constraint(const JoinConstraint& jc, const IdSet& t, const Poset* rep) {
  if (rep) {
    check_known(jc.alpha_ids(), *rep);
    check_known(jc.beta, *rep);
    check_known(t, *rep);
  }
  JoinEval r;
  r.alpha = eval_cnf(jc.alpha_groups, t);
  r.beta = std::all_of(jc.beta.begin(), jc.beta.end(), [&](const Id& x) { return has(t, x); });
  r.satisfied = !r.alpha || r.beta;
  return r;
}

void validate_join_constraint(const JoinConstraint& jc, const Poset& rep) {
  const IdSet args = jc.alpha_ids();
  check_known(args, rep);
  check_known(jc.beta, rep);
  for (const auto& x : args)
    for (const auto& y : args)
      if (rep.lt(x, y))
        throw Error(ErrorKind::AlphaArgumentsComparable, x + " is below " + y + " among alpha arguments", {x, y});
}

std::vector<JoinConstraint> constraints_from_lattice(const Lattice& l) {
  const auto psi = canonical_partial_rep(l);
  const auto ji = join_irreducibles(l);
  const Id& bottom = l.elements()[l.bottom()];
  std::vector<JoinConstraint> out;
  for (const auto& x : l.elements())
    for (const auto& y : l.elements()) {
      if (x == bottom && y == bottom) continue;
      IdSet u = psi.at(x);
      u.insert(psi.at(y).begin(), psi.at(y).end());
      JoinConstraint jc;
      for (const auto& z : maximal_elements(ji.order, u)) jc.alpha_groups.push_back({z});
      jc.beta = psi.at(l.join(x, y));
      out.push_back(std::move(jc.canonicalize()));
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<IdSet> filter_lower_sets(const std::vector<IdSet>& family, const std::vector<JoinConstraint>& omega) {
  std::vector<IdSet> out;
  for (const auto& t : family)
    if (std::all_of(omega.begin(), omega.end(), [&](const JoinConstraint& jc) {
          return eval_join_constraint(jc, t).satisfied;
        }))
      out.push_back(t);
  return out;
}

ComplementJoinConstraint complement(const JoinConstraint& jc) {
  ComplementJoinConstraint c;
  c.beta_c = jc.beta;
  c.alpha_c_groups = jc.alpha_groups;
  return c.canonicalize();
}

JoinConstraint uncomplement(const ComplementJoinConstraint& cjc) {
  JoinConstraint jc;
  jc.alpha_groups = cjc.alpha_c_groups;
  jc.beta = cjc.beta_c;
  return jc.canonicalize();
}

bool satisfies_complement(const IdSet& t, const ComplementJoinConstraint& cjc) {
  const bool beta_c = std::any_of(cjc.beta_c.begin(), cjc.beta_c.end(), [&](const Id& x) { return has(t, x); });
  return !beta_c || eval_dnf(cjc.alpha_c_groups, t);
}

}  // namespace latmatch
