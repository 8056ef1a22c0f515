#include "mergehopf/merge_action.hpp"

#include <algorithm>
#include <map>

namespace mergehopf {

std::vector<SiteRef> occurrences_of(const SynTree& pattern, const Forest& f) {
  std::vector<SiteRef> out;
  if (pattern.is_unit()) return out;
  for (std::size_t c = 0; c < f.size(); ++c) {
    const SynTree& t = f.component(c);
    if (pattern.vertex_count() > t.vertex_count()) continue;
    for (const auto& v : all_vertices(t))
      if (subtree_at(t, v) == pattern)
        out.push_back({static_cast<int>(c), v});
  }
  return out;
}

const char* variant_name(MergeVariant v) {
  switch (v) {
    case MergeVariant::External: return "external";
    case MergeVariant::Internal: return "internal";
    case MergeVariant::Sideward2b: return "sideward2b";
    case MergeVariant::Sideward3b: return "sideward3b";
    case MergeVariant::CountercyclicI: return "countercyclic-i";
    case MergeVariant::CountercyclicII: return "countercyclic-ii";
    case MergeVariant::CountercyclicIII: return "countercyclic-iii";
    case MergeVariant::UnaryExtract: return "unary-extract";
  }
  return "?";
}

std::optional<MergeVariant> variant_from_name(const std::string& name) {
  static const std::map<std::string, MergeVariant> table = {
      {"external", MergeVariant::External},
      {"internal", MergeVariant::Internal},
      {"sideward2b", MergeVariant::Sideward2b},
      {"sideward3b", MergeVariant::Sideward3b},
      {"countercyclic-i", MergeVariant::CountercyclicI},
      {"countercyclic-ii", MergeVariant::CountercyclicII},
      {"countercyclic-iii", MergeVariant::CountercyclicIII},
      {"unary-extract", MergeVariant::UnaryExtract},
  };
  auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

namespace {

void check_site(const Forest& f, const SiteRef& s) {
  if (s.component < 0 || static_cast<std::size_t>(s.component) >= f.size())
    throw AddressError("occurrence component out of range");
  if (!path_resolves(f.component(static_cast<std::size_t>(s.component)), s.path))
    throw AddressError("occurrence path does not resolve: " + s.path.steps);
}

}  // namespace

MergeForm classify_form(const Forest& f, const SiteRef& occ1,
                        const std::optional<SiteRef>& occ2) {
  check_site(f, occ1);
  if (!occ2) {
    if (occ1.path.is_root())
      throw PreconditionError(
          "unit-paired extraction at a component root is the identity");
    return {MergeVariant::UnaryExtract, occ1, std::nullopt};
  }
  check_site(f, *occ2);
  const bool same = occ1.component == occ2->component;
  const bool r1 = occ1.path.is_root();
  const bool r2 = occ2->path.is_root();
  if (same && occ1.path == occ2->path)
    throw PreconditionError("occurrences must be distinct");
  if (!same && r1 && r2) return {MergeVariant::External, occ1, occ2};
  if (same && (r1 || r2)) {
    // component plus its own accessible term; keep the component first
    SiteRef comp = r1 ? occ1 : *occ2;
    SiteRef acc = r1 ? *occ2 : occ1;
    return {MergeVariant::Internal, comp, acc};
  }
  if (!same && (r1 || r2)) {
    SiteRef comp = r1 ? occ1 : *occ2;
    SiteRef acc = r1 ? *occ2 : occ1;
    return {MergeVariant::Sideward2b, comp, acc};
  }
  if (!same) return {MergeVariant::Sideward3b, occ1, occ2};
  if (occ1.path.is_strict_prefix_of(occ2->path))
    return {MergeVariant::CountercyclicI, occ1, occ2};
  if (occ2->path.is_strict_prefix_of(occ1.path))
    return {MergeVariant::CountercyclicII, occ1, occ2};
  return {MergeVariant::CountercyclicIII, occ1, occ2};
}

namespace {

SynTree site_subtree(const Forest& f, const SiteRef& s) {
  return subtree_at(f.component(static_cast<std::size_t>(s.component)), s.path);
}

}  // namespace

Forest apply_merge_case(const MergeForm& form, const Forest& f) {
  // Re-derive the case from the occurrences; a mismatch means the form was
  // put together for a different workspace.
  MergeForm check = classify_form(f, form.first, form.second);
  if (check.variant != form.variant)
    throw PreconditionError(std::string("occurrences classify as ") +
                            variant_name(check.variant) + ", not " +
                            variant_name(form.variant));
  const SiteRef& o1 = check.first;
  switch (form.variant) {
    case MergeVariant::External: {
      const SiteRef& o2 = *check.second;
      SynTree merged = merge(site_subtree(f, o1), site_subtree(f, o2));
      return forest_quotient(f, {o1, o2}).with_component(merged);
    }
    case MergeVariant::Internal: {
      // o1 = whole component, o2 = its accessible term
      const SiteRef& o2 = *check.second;
      SynTree beta = site_subtree(f, o2);
      SynTree rest = quotient(f.component(static_cast<std::size_t>(o2.component)),
                              o2.path);
      return f.replace_component(static_cast<std::size_t>(o2.component),
                                 merge(beta, rest));
    }
    case MergeVariant::Sideward2b: {
      // o1 = whole component a, o2 = accessible term of component b
      const SiteRef& o2 = *check.second;
      SynTree merged = merge(site_subtree(f, o1), site_subtree(f, o2));
      return forest_quotient(f, {o1, o2}).with_component(merged);
    }
    case MergeVariant::Sideward3b: {
      const SiteRef& o2 = *check.second;
      SynTree merged = merge(site_subtree(f, o1), site_subtree(f, o2));
      return forest_quotient(f, {o1, o2}).with_component(merged);
    }
    case MergeVariant::CountercyclicI:
    case MergeVariant::CountercyclicII:
    case MergeVariant::CountercyclicIII: {
      const SiteRef& o2 = *check.second;
      SynTree merged = merge(site_subtree(f, o1), site_subtree(f, o2));
      // cancellation site: the outer occurrence when nested, both when disjoint
      std::vector<SiteRef> sites;
      if (form.variant == MergeVariant::CountercyclicI)
        sites = {o1};
      else if (form.variant == MergeVariant::CountercyclicII)
        sites = {*check.second};
      else
        sites = {o1, o2};
      return forest_quotient(f, sites).with_component(merged);
    }
    case MergeVariant::UnaryExtract: {
      SynTree beta = site_subtree(f, o1);
      return forest_quotient(f, {o1}).with_component(beta);
    }
  }
  throw std::logic_error("unreachable");
}

CountDeltas expected_size_delta(const MergeForm& form, const Forest& f) {
  switch (form.variant) {
    case MergeVariant::External: return {-1, +2, +1, 0};
    case MergeVariant::Internal: return {0, 0, 0, 0};
    case MergeVariant::UnaryExtract: return {+1, -2, -1, 0};
    case MergeVariant::Sideward3b: return {+1, 0, +1, +2};
    case MergeVariant::Sideward2b: return {0, +1, +1, +1};
    case MergeVariant::CountercyclicIII: return {+1, -2, -1, 0};
    case MergeVariant::CountercyclicI:
    case MergeVariant::CountercyclicII: {
      // parameterized by the inner occurrence
      const SiteRef& inner = (form.variant == MergeVariant::CountercyclicI)
                                 ? *form.second
                                 : form.first;
      SynTree t = site_subtree(f, inner);
      long long sigma = t.vertex_count();
      return {+1, sigma - 1, sigma, sigma + 1};
    }
  }
  throw std::logic_error("unreachable");
}

CountDeltas size_delta(const MergeForm& form, const Forest& f) {
  Counts before = counts(f);
  Counts after = counts(apply_merge_case(form, f));
  CountDeltas d{after.b0 - before.b0, after.acc - before.acc,
                after.sigma - before.sigma, after.sigma_hat - before.sigma_hat};
  CountDeltas want = expected_size_delta(form, f);
  if (d != want)
    throw InvariantViolation(
        std::string("size deltas for ") + variant_name(form.variant) +
        " on " + f.encoding() + " differ from the reference row");
  return d;
}

ConstraintCheck constraint_check(const MergeForm& form, const Forest& f) {
  Counts before = counts(f);
  Counts after = counts(apply_merge_case(form, f));
  CountDeltas d{after.b0 - before.b0, after.acc - before.acc,
                after.sigma - before.sigma, after.sigma_hat - before.sigma_hat};
  ConstraintCheck c;
  c.b0_nonincreasing = d.b0 <= 0;
  c.acc_nondecreasing = d.acc >= 0;
  c.sigma_bounded = 0 <= d.sigma && d.sigma <= 1;
  c.sigma_hat_conserved = d.sigma_hat == 0;
  return c;
}

Tensor delta_match(const SynTree& s, const SynTree& s2, const Forest& f,
                   const TensorKey& term) {
  Tensor out;
  for (const auto& e : extractions(f)) {
    if (e.extracted != term.first || e.quotient != term.second) continue;
    bool matched = false;
    if (!s.is_unit() && !s2.is_unit()) {
      for (const auto& sa : e.sites) {
        if (site_subtree(f, sa) != s) continue;
        for (const auto& sb : e.sites) {
          if (sa.component == sb.component) continue;
          if (site_subtree(f, sb) != s2) continue;
          matched = true;
          Forest left = Forest({s, s2});
          out.add({left, forest_quotient(f, {sa, sb})}, 1);
        }
      }
    } else if (s.is_unit() != s2.is_unit()) {
      const SynTree& needle = s.is_unit() ? s2 : s;
      for (const auto& sa : e.sites) {
        if (site_subtree(f, sa) != needle) continue;
        matched = true;
        out.add({Forest::single(needle), forest_quotient(f, {sa})}, 1);
      }
    }
    if (!matched) out.add({Forest(), f}, 1);
  }
  return out;
}

NaryTree b_plus(const Forest& f) {
  std::vector<NaryTree> comps;
  comps.reserve(f.size());
  for (const auto& t : f.components()) comps.push_back(nary_from_binary(t));
  return graft(NaryForest(std::move(comps)));
}

LinComb merge_op(const SynTree& s, const SynTree& s2, const Forest& f) {
  LinComb out;
  if (s.is_unit() && s2.is_unit()) {
    out.add(f, 1);
    return out;
  }
  if (s.is_unit() || s2.is_unit()) {
    const SynTree& needle = s.is_unit() ? s2 : s;
    for (const auto& occ : occurrences_of(needle, f)) {
      if (occ.path.is_root()) {
        out.add(f, 1);  // the merged pair is the component itself
      } else {
        out.add(forest_quotient(f, {occ}).with_component(needle), 1);
      }
    }
    if (out.is_zero()) out.add(f, 1);
    return out;
  }
  auto occ1 = occurrences_of(s, f);
  auto occ2 = occurrences_of(s2, f);
  for (const auto& a : occ1)
    for (const auto& b : occ2) {
      if (a.component == b.component) continue;
      out.add(forest_quotient(f, {a, b}).with_component(merge(s, s2)), 1);
    }
  if (out.is_zero()) out.add(f, 1);
  return out;
}

LinComb internal_merge(const SiteRef& site, const Forest& f) {
  check_site(f, site);
  if (site.path.is_root())
    throw PreconditionError(
        "internal merge needs a non-root occurrence; merge whole components "
        "externally instead");
  SynTree beta = site_subtree(f, site);
  SynTree rest =
      quotient(f.component(static_cast<std::size_t>(site.component)), site.path);
  LinComb out;
  out.add(f.replace_component(static_cast<std::size_t>(site.component),
                              merge(beta, rest)),
          1);
  return out;
}

LinComb rho(const SynTree& t, const Forest& f) {
  LinComb out;
  out.add(f.with_component(t), 1);  // empty extraction
  for (std::size_t c = 0; c < f.size(); ++c) {
    for (const auto& v : all_vertices(f.component(c))) {
      SiteRef site{static_cast<int>(c), v};
      SynTree merged = merge(t, site_subtree(f, site));
      out.add(forest_quotient(f, {site}).with_component(merged), 1);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

WeightedWorkspace::WeightedWorkspace(const Forest& f) {
  std::vector<Component> comps;
  comps.reserve(f.size());
  for (const auto& t : f.components()) comps.push_back({t, 0});
  *this = WeightedWorkspace(std::move(comps));
}

WeightedWorkspace::WeightedWorkspace(std::vector<Component> comps)
    : comps_(std::move(comps)) {
  std::erase_if(comps_, [](const Component& c) { return c.tree.is_unit(); });
  std::sort(comps_.begin(), comps_.end(),
            [](const Component& a, const Component& b) {
              if (a.tree != b.tree) return a.tree < b.tree;
              return a.degree < b.degree;
            });
  if (comps_.empty()) return;
  enc_.clear();
  for (std::size_t i = 0; i < comps_.size(); ++i) {
    if (i) enc_ += " | ";
    enc_ += comps_[i].tree.encoding();
    if (comps_[i].degree != 0) {
      enc_ += "@eps^";
      enc_ += std::to_string(comps_[i].degree);
    }
  }
}

bool WeightedWorkspace::all_degrees_zero() const {
  return std::all_of(comps_.begin(), comps_.end(),
                     [](const Component& c) { return c.degree == 0; });
}

int WeightedWorkspace::abs_degree() const {
  int d = 0;
  for (const auto& c : comps_) d += c.degree < 0 ? -c.degree : c.degree;
  return d;
}

Forest WeightedWorkspace::forest() const {
  std::vector<SynTree> trees;
  trees.reserve(comps_.size());
  for (const auto& c : comps_) trees.push_back(c.tree);
  return Forest(std::move(trees));
}

namespace {

void check_weighted_site(const WeightedWorkspace& w, const SiteRef& s) {
  if (s.component < 0 || static_cast<std::size_t>(s.component) >= w.size())
    throw AddressError("occurrence component out of range");
  if (!path_resolves(w.components()[static_cast<std::size_t>(s.component)].tree,
                     s.path))
    throw AddressError("occurrence path does not resolve: " + s.path.steps);
}

MergeVariant weighted_variant(const SiteRef& a, const SiteRef& b) {
  const bool r1 = a.path.is_root(), r2 = b.path.is_root();
  if (r1 && r2) return MergeVariant::External;
  if (r1 || r2) return MergeVariant::Sideward2b;
  return MergeVariant::Sideward3b;
}

}  // namespace

EpsTerm eps_apply_pair(const WeightedWorkspace& w, const SiteRef& a,
                       const SiteRef& b) {
  check_weighted_site(w, a);
  check_weighted_site(w, b);
  if (a.component == b.component)
    throw PreconditionError("weighted pair application needs distinct components");
  const auto& comps = w.components();
  const auto& ca = comps[static_cast<std::size_t>(a.component)];
  const auto& cb = comps[static_cast<std::size_t>(b.component)];
  SynTree ta = subtree_at(ca.tree, a.path);
  SynTree tb = subtree_at(cb.tree, b.path);
  int da = ca.degree + static_cast<int>(a.path.depth());
  int db = cb.degree + static_cast<int>(b.path.depth());
  int merged_degree = da + db < 0 ? -(da + db) : da + db;

  std::vector<WeightedWorkspace::Component> out;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (static_cast<int>(i) == a.component) {
      SynTree q = quotient(ca.tree, a.path);
      if (!q.is_unit())
        out.push_back({q, ca.degree - static_cast<int>(a.path.depth())});
    } else if (static_cast<int>(i) == b.component) {
      SynTree q = quotient(cb.tree, b.path);
      if (!q.is_unit())
        out.push_back({q, cb.degree - static_cast<int>(b.path.depth())});
    } else {
      out.push_back(comps[i]);
    }
  }
  out.push_back({merge(ta, tb), merged_degree});

  EpsTerm term;
  term.workspace = WeightedWorkspace(std::move(out));
  term.variant = weighted_variant(a, b);
  term.occ1 = a;
  term.occ2 = b;
  term.merged_degree = merged_degree;
  return term;
}

EpsTerm eps_apply_unary(const WeightedWorkspace& w, const SiteRef& a) {
  check_weighted_site(w, a);
  const auto& comps = w.components();
  const auto& ca = comps[static_cast<std::size_t>(a.component)];
  SynTree ta = subtree_at(ca.tree, a.path);
  int da = ca.degree + static_cast<int>(a.path.depth());
  int merged_degree = da < 0 ? -da : da;

  std::vector<WeightedWorkspace::Component> out;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (static_cast<int>(i) == a.component) {
      if (!a.path.is_root()) {
        SynTree q = quotient(ca.tree, a.path);
        if (!q.is_unit())
          out.push_back({q, ca.degree - static_cast<int>(a.path.depth())});
      }
      // the extracted term, re-weighted by the merge with the unit
    } else {
      out.push_back(comps[i]);
    }
  }
  out.push_back({ta, merged_degree});

  EpsTerm term;
  term.workspace = WeightedWorkspace(std::move(out));
  term.variant = MergeVariant::UnaryExtract;
  term.occ1 = a;
  term.merged_degree = merged_degree;
  return term;
}

namespace {

std::vector<SiteRef> weighted_occurrences(const SynTree& pattern,
                                          const WeightedWorkspace& w) {
  std::vector<SiteRef> out;
  if (pattern.is_unit()) return out;
  for (std::size_t c = 0; c < w.size(); ++c) {
    const SynTree& t = w.components()[c].tree;
    if (pattern.vertex_count() > t.vertex_count()) continue;
    for (const auto& v : all_vertices(t))
      if (subtree_at(t, v) == pattern) out.push_back({static_cast<int>(c), v});
  }
  return out;
}

}  // namespace

std::vector<EpsTerm> merge_eps_terms(const SynTree& s, const SynTree& s2,
                                     const WeightedWorkspace& w) {
  std::vector<EpsTerm> out;
  auto identity = [&] {
    EpsTerm t;
    t.workspace = w;
    t.identity = true;
    return t;
  };
  if (s.is_unit() && s2.is_unit()) {
    out.push_back(identity());
    return out;
  }
  if (s.is_unit() || s2.is_unit()) {
    const SynTree& needle = s.is_unit() ? s2 : s;
    for (const auto& occ : weighted_occurrences(needle, w))
      out.push_back(eps_apply_unary(w, occ));
    if (out.empty()) out.push_back(identity());
    return out;
  }
  auto occ1 = weighted_occurrences(s, w);
  auto occ2 = weighted_occurrences(s2, w);
  for (const auto& a : occ1)
    for (const auto& b : occ2) {
      if (a.component == b.component) continue;
      out.push_back(eps_apply_pair(w, a, b));
    }
  if (out.empty()) out.push_back(identity());
  return out;
}

WeightedLinComb merge_eps(const SynTree& s, const SynTree& s2,
                          const WeightedWorkspace& w) {
  WeightedLinComb out;
  for (const auto& t : merge_eps_terms(s, s2, w)) out.add(t.workspace, 1);
  return out;
}

LinComb minimal_search_limit(const WeightedLinComb& x) {
  LinComb out;
  for (const auto& [w, c] : x.terms())
    if (w.abs_degree() == 0) out.add(w.forest(), c);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct Candidate {
  Forest result;
  MergeForm form;
};

std::string list_candidates(const std::vector<Candidate>& cands) {
  std::string msg;
  for (const auto& c : cands) {
    msg += "\n  ";
    msg += variant_name(c.form.variant);
    msg += " at ";
    msg += std::to_string(c.form.first.component);
    msg += ":";
    msg += c.form.first.path.steps;
    if (c.form.second) {
      msg += ", ";
      msg += std::to_string(c.form.second->component);
      msg += ":";
      msg += c.form.second->path.steps;
    }
    msg += " -> ";
    msg += c.result.encoding();
  }
  return msg;
}

bool site_matches(const std::optional<SiteRef>& want, const SiteRef& got) {
  return !want || *want == got;
}

}  // namespace

Derivation derive(const Forest& initial, const std::vector<StepSpec>& steps) {
  Derivation d;
  d.initial = initial;
  Forest cur = initial;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const StepSpec& spec = steps[i];
    std::vector<Candidate> candidates;
    LinComb result;

    switch (spec.kind) {
      case StepSpec::Kind::MergePair: {
        result = merge_op(spec.s, spec.s2, cur);
        if (spec.s.is_unit() && spec.s2.is_unit())
          throw PreconditionError("step " + std::to_string(i) +
                                  ": both search terms are the unit");
        if (spec.s.is_unit() || spec.s2.is_unit()) {
          const SynTree& needle = spec.s.is_unit() ? spec.s2 : spec.s;
          for (const auto& occ : occurrences_of(needle, cur)) {
            if (occ.path.is_root()) continue;  // identity contribution
            if (!site_matches(spec.occ1, occ)) continue;
            MergeForm form = classify_form(cur, occ, std::nullopt);
            candidates.push_back({apply_merge_case(form, cur), form});
          }
        } else {
          for (const auto& a : occurrences_of(spec.s, cur)) {
            if (!site_matches(spec.occ1, a)) continue;
            for (const auto& b : occurrences_of(spec.s2, cur)) {
              if (a.component == b.component) continue;
              if (!site_matches(spec.occ2, b)) continue;
              MergeForm form = classify_form(cur, a, b);
              candidates.push_back({apply_merge_case(form, cur), form});
            }
          }
        }
        break;
      }
      case StepSpec::Kind::Internal: {
        std::vector<SiteRef> sites;
        if (spec.occ1) {
          sites.push_back(*spec.occ1);
        } else {
          for (std::size_t c = 0; c < cur.size(); ++c)
            for (const auto& t : accessible_terms(cur.component(c)))
              sites.push_back({static_cast<int>(c), t.path});
        }
        for (const auto& site : sites) {
          MergeForm form = classify_form(
              cur, SiteRef{site.component, VertexPath{}}, site);
          candidates.push_back({apply_merge_case(form, cur), form});
          LinComb one = internal_merge(site, cur);
          result.add(one);
        }
        break;
      }
      case StepSpec::Kind::Case: {
        if (!spec.variant || !spec.occ1)
          throw PreconditionError("step " + std::to_string(i) +
                                  ": case steps need a variant and occurrences");
        MergeForm form{*spec.variant, *spec.occ1, spec.occ2};
        MergeForm checked = classify_form(cur, form.first, form.second);
        if (checked.variant != *spec.variant)
          throw PreconditionError(
              std::string("step ") + std::to_string(i) +
              ": occurrences classify as " + variant_name(checked.variant));
        Forest next = apply_merge_case(checked, cur);
        candidates.push_back({next, checked});
        result.add(next, 1);
        break;
      }
    }

    if (candidates.empty())
      throw PreconditionError("step " + std::to_string(i) +
                              ": no matching occurrence");
    // Distinct candidate results may coincide; ambiguity means distinct forms.
    if (candidates.size() > 1)
      throw PreconditionError("step " + std::to_string(i) +
                              ": ambiguous occurrence selection, candidates:" +
                              list_candidates(candidates));

    const Candidate& chosen = candidates.front();
    if (spec.kind == StepSpec::Kind::MergePair) {
      // result already holds the full operator output
    } else if (spec.kind == StepSpec::Kind::Internal && result.is_zero()) {
      result.add(chosen.result, 1);
    }

    DerivationStep step;
    step.spec = spec;
    step.form = chosen.form;
    step.before = cur;
    step.chosen = chosen.result;
    step.result = result;
    step.counts_before = counts(cur);
    step.counts_after = counts(chosen.result);
    step.deltas = {step.counts_after.b0 - step.counts_before.b0,
                   step.counts_after.acc - step.counts_before.acc,
                   step.counts_after.sigma - step.counts_before.sigma,
                   step.counts_after.sigma_hat - step.counts_before.sigma_hat};
    step.constraints = constraint_check(chosen.form, cur);
    d.steps.push_back(std::move(step));
    cur = chosen.result;
  }
  return d;
}

}  // namespace mergehopf
