#include "sbc/chain.hpp"

#include <algorithm>

namespace sbc {

FreeObject ChainComplex::term(int n) const {
  if (n < 0 || n > top()) return {};
  return terms[n];
}

Morphism ChainComplex::d(int n) const {
  if (n >= 0 && n <= top()) return differentials[n];
  return Morphism::zero(term(n), term(n - 1));
}

std::string ChainComplex::name(int degree, int index) const {
  if (cell_name) return cell_name(degree, index);
  return "#" + std::to_string(index);
}

std::string describe_entry(const ChainComplex& source, int source_degree, const ChainComplex& target,
                           int target_degree, const EntryWitness& w) {
  return "entry " + source.name(source_degree, static_cast<int>(w.col)) + " -> " +
         target.name(target_degree, static_cast<int>(w.row)) + ": got " + std::to_string(w.got) + ", expected " +
         std::to_string(w.expected);
}

ValidationReport verify_complex(const ChainComplex& c) {
  ValidationReport rep;
  for (int n = 1; n <= c.top(); ++n) {
    Morphism dd = compose(c.d(n - 1), c.d(n));
    if (auto w = first_difference(dd, Morphism::zero(dd.source, dd.target)))
      rep.add("d^2", "degree " + std::to_string(n) + ": " + describe_entry(c, n, c, n - 2, *w));
  }
  return rep;
}

namespace {

int map_top(const ChainMap& f) { return static_cast<int>(f.components.size()) - 1; }

}  // namespace

ValidationReport verify_chain_map(const ChainMap& f) {
  ValidationReport rep;
  const auto& s = *f.source;
  const auto& t = *f.target;
  for (int n = 0; n <= map_top(f); ++n) {
    if (!(f.components[n].source == s.term(n)) || !(f.components[n].target == t.term(n))) {
      rep.add("shape", "component in degree " + std::to_string(n) + " has wrong endpoints");
      return rep;
    }
  }
  for (int n = 1; n <= map_top(f); ++n) {
    Morphism lhs = compose(t.d(n), f.components[n]);
    Morphism rhs = compose(f.components[n - 1], s.d(n));
    if (auto w = first_difference(lhs, rhs))
      rep.add("chain map", "degree " + std::to_string(n) + ": d f != f d at " + describe_entry(s, n, t, n - 1, *w));
  }
  return rep;
}

ValidationReport verify_homotopy(const ChainHomotopy& h) {
  ValidationReport rep;
  const auto& s = *h.f.source;
  const auto& t = *h.f.target;
  if (h.g.source != h.f.source || h.g.target != h.f.target) {
    rep.add("shape", "homotopy endpoints differ");
    return rep;
  }
  const int top = static_cast<int>(h.components.size()) - 1;
  for (int n = 0; n <= top; ++n) {
    if (!t.known(n + 1)) break;
    if (n > map_top(h.f) || n > map_top(h.g)) break;
    Morphism lhs = compose(t.d(n + 1), h.components[n]);
    if (n > 0) lhs = lhs + compose(h.components[n - 1], s.d(n));
    Morphism rhs = h.f.components[n] - h.g.components[n];
    if (auto w = first_difference(lhs, rhs))
      rep.add("homotopy", "degree " + std::to_string(n) + ": dh + hd != f - g at " + describe_entry(s, n, t, n, *w));
  }
  return rep;
}

ChainMap identity_map(ChainComplexPtr c) {
  ChainMap f{c, c, {}};
  for (int n = 0; n <= c->top(); ++n) f.components.push_back(Morphism::identity(c->terms[n]));
  return f;
}

ChainMap zero_map(ChainComplexPtr source, ChainComplexPtr target) {
  ChainMap f{source, target, {}};
  int top = source->top();
  if (target->truncated) top = std::min(top, target->top());
  for (int n = 0; n <= top; ++n) f.components.push_back(Morphism::zero(source->term(n), target->term(n)));
  return f;
}

ChainMap compose_chain_maps(const ChainMap& f, const ChainMap& g) {
  if (g.target != f.source) throw InputError("compose_chain_maps: endpoints do not match");
  ChainMap h{g.source, f.target, {}};
  const int top = std::min(map_top(f), map_top(g));
  for (int n = 0; n <= top; ++n) h.components.push_back(compose(f.components[n], g.components[n]));
  return h;
}

ChainMap add_maps(const ChainMap& f, const ChainMap& g) {
  if (f.source != g.source || f.target != g.target) throw InputError("add_maps: endpoints do not match");
  ChainMap h{f.source, f.target, {}};
  const int top = std::min(map_top(f), map_top(g));
  for (int n = 0; n <= top; ++n) h.components.push_back(f.components[n] + g.components[n]);
  return h;
}

ChainMap subtract_maps(const ChainMap& f, const ChainMap& g) {
  if (f.source != g.source || f.target != g.target) throw InputError("subtract_maps: endpoints do not match");
  ChainMap h{f.source, f.target, {}};
  const int top = std::min(map_top(f), map_top(g));
  for (int n = 0; n <= top; ++n) h.components.push_back(f.components[n] - g.components[n]);
  return h;
}

ValidationReport compare_maps(const ChainMap& f, const ChainMap& g, const std::string& what) {
  ValidationReport rep;
  if (f.source != g.source || f.target != g.target) {
    rep.add("shape", what + ": endpoints differ");
    return rep;
  }
  const int top = std::min(map_top(f), map_top(g));
  for (int n = 0; n <= top; ++n)
    if (auto w = first_difference(f.components[n], g.components[n]))
      rep.add("map mismatch", what + " fails in degree " + std::to_string(n) + " at " +
                                  describe_entry(*f.source, n, *f.target, n, *w));
  return rep;
}

ValidationReport check_map_generators(const ChainMap& f) {
  ValidationReport rep;
  for (std::size_t n = 0; n < f.components.size(); ++n)
    rep.merge(check_generators(f.components[n], *f.source->table), "degree " + std::to_string(n) + ": ");
  return rep;
}

}  // namespace sbc
