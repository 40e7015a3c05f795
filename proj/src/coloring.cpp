#include "pcx/coloring.hpp"

namespace pcx {

Coloring Coloring::trivial() { return Coloring(); }

Coloring Coloring::cardinality() {
  Coloring c;
  c.kind_ = Kind::cardinality;
  return c;
}

Coloring Coloring::field_sum(std::vector<Rational> point_weights) {
  Coloring c;
  c.kind_ = Kind::field_sum;
  c.point_weights_ = std::move(point_weights);
  return c;
}

Coloring Coloring::spiked(Mask A, Rational M) {
  Coloring c;
  c.kind_ = Kind::spiked;
  c.spike_ = A;
  c.M_ = std::move(M);
  return c;
}

Coloring Coloring::custom(std::map<std::string, Rational> by_label, Rational bottom, Rational top) {
  Coloring c;
  c.kind_ = Kind::custom;
  c.by_label_ = std::move(by_label);
  c.bottom_ = std::move(bottom);
  c.top_ = std::move(top);
  return c;
}

std::string Coloring::name() const {
  switch (kind_) {
    case Kind::trivial: return "trivial";
    case Kind::cardinality: return "card";
    case Kind::field_sum: return "field_sum";
    case Kind::spiked: return "spiked";
    case Kind::custom: return "custom";
  }
  return "?";
}

Rational Coloring::value(const PathComplex& X, int v) const {
  if (kind_ == Kind::trivial) {
    if (v == BOTTOM) return X.bottom_type();
    if (v == TOP) return X.top_type();
    return X.vertex(v).type;
  }
  if (kind_ == Kind::custom) {
    if (v == BOTTOM) return bottom_;
    if (v == TOP) return top_;
    auto it = by_label_.find(X.vertex(v).label);
    if (it == by_label_.end()) throw Error("MissingWeight", "no color for vertex '" + X.vertex(v).label + "'");
    return it->second;
  }
  Mask flat;
  if (v == BOTTOM || v == TOP) {
    if (!X.has_boundary_flats()) throw Error("UnsupportedSystem", name() + " coloring needs boundary flats");
    flat = v == BOTTOM ? X.bottom_flat() : X.top_flat();
  } else {
    if (!X.vertex(v).has_flat) throw Error("UnsupportedSystem", name() + " coloring needs flats");
    flat = X.vertex(v).flat;
  }
  switch (kind_) {
    case Kind::cardinality: return popcount(flat);
    case Kind::field_sum: {
      Rational s = 0;
      for (std::size_t i = 0; i < point_weights_.size() && i < 64; ++i)
        if ((flat >> i) & 1) s += point_weights_[i];
      return s;
    }
    case Kind::spiked: return Rational((flat & spike_) ? M_ : Rational(0)) + popcount(flat);
    default: break;
  }
  return 0;
}

void Coloring::check_order_preserving(const PathComplex& X) const {
  std::vector<Rational> val(X.num_vertices());
  for (int v = 0; v < X.num_vertices(); ++v) val[v] = value(X, v);
  Rational lo = value(X, BOTTOM), hi = value(X, TOP);
  for (std::size_t f = 0; f < X.num_facets(); ++f) {
    const auto& F = X.facet(f);
    Rational prev = lo;
    std::string prev_label = "0^";
    for (int v : F) {
      if (!(val[v] > prev))
        throw Error("NotOrderPreserving", "phi(" + X.vertex(v).label + ") <= phi(" + prev_label + ")");
      prev = val[v];
      prev_label = X.vertex(v).label;
    }
    if (!(hi > prev)) throw Error("NotOrderPreserving", "phi(1^) <= phi(" + prev_label + ")");
  }
}

AlphaBeta AlphaBeta::from_coloring(const PathComplex& X, const Coloring& c) {
  c.check_order_preserving(X);
  AlphaBeta ab;
  ab.phi_.resize(X.num_vertices());
  ab.type_.resize(X.num_vertices());
  for (int v = 0; v < X.num_vertices(); ++v) {
    ab.phi_[v] = c.value(X, v);
    ab.type_[v] = X.vertex(v).type;
  }
  ab.phi_bottom_ = c.value(X, BOTTOM);
  ab.phi_top_ = c.value(X, TOP);
  ab.bottom_type_ = X.bottom_type();
  ab.top_type_ = X.top_type();
  return ab;
}

AlphaBeta AlphaBeta::s_rank(const PathComplex& X, const Rational& s) {
  if (s < 1) throw Error("InvalidS", "s must be at least 1, got " + to_string(s));
  AlphaBeta ab;
  ab.s_ = s;
  ab.type_.resize(X.num_vertices());
  ab.phi_.resize(X.num_vertices());
  for (int v = 0; v < X.num_vertices(); ++v) {
    ab.type_[v] = X.vertex(v).type;
    ab.phi_[v] = ab.type_[v];
  }
  ab.bottom_type_ = X.bottom_type();
  ab.top_type_ = X.top_type();
  ab.phi_bottom_ = ab.bottom_type_;
  ab.phi_top_ = ab.top_type_;
  for (int k = 0; k <= ab.top_type_ - ab.bottom_type_; ++k) ab.sk_.push_back(s_analog(k, s));
  return ab;
}

int AlphaBeta::type(int v) const {
  if (v == BOTTOM) return bottom_type_;
  if (v == TOP) return top_type_;
  return type_[v];
}

const Rational& AlphaBeta::phi(int v) const {
  if (v == BOTTOM) return phi_bottom_;
  if (v == TOP) return phi_top_;
  return phi_[v];
}

Rational AlphaBeta::alpha(int K, int L, int F) const {
  if (!alpha_override_.empty()) {
    auto it = alpha_override_.find({K, L, F});
    if (it != alpha_override_.end()) return it->second;
  }
  if (s_) return sk_[type(F) - type(K)] / sk_[type(L) - type(K)];
  return (phi(F) - phi(K)) / (phi(L) - phi(K));
}

Rational AlphaBeta::beta(int K, int L, int F) const {
  if (s_) return sk_[type(L) - type(F)] / sk_[type(L) - type(K)];
  return (phi(L) - phi(F)) / (phi(L) - phi(K));
}

}  // namespace pcx
