#include "pcx/complex.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace pcx {

namespace {

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace

PathComplex PathComplex::from_parts(int d, std::vector<Vertex> vertices, std::vector<std::vector<int>> facets,
                                    std::vector<Rational> weights, std::vector<int> part_types, int bottom_type,
                                    int top_type, bool exact) {
  PathComplex X;
  X.d_ = d;
  X.vertices_ = std::move(vertices);
  X.facets_ = std::move(facets);
  X.weights_ = std::move(weights);
  X.part_types_ = std::move(part_types);
  X.bottom_type_ = bottom_type;
  X.top_type_ = top_type;
  X.exact_ = exact;
  X.parent_vertex_.resize(X.vertices_.size());
  std::iota(X.parent_vertex_.begin(), X.parent_vertex_.end(), 0);
  X.index();
  return X;
}

void PathComplex::index() {
  if (facets_.empty()) throw Error("DegenerateComplex", "complex has no facets");
  if (static_cast<int>(part_types_.size()) != d_) throw Error("DegenerateComplex", "part type count mismatch");
  parts_.assign(d_, {});
  label_index_.clear();
  for (int v = 0; v < num_vertices(); ++v) {
    const Vertex& x = vertices_[v];
    if (x.part < 0 || x.part >= d_) throw Error("DegenerateComplex", "vertex part out of range");
    parts_[x.part].push_back(v);
    if (!label_index_.emplace(x.label, v).second)
      throw Error("DuplicateLabel", "vertex label '" + x.label + "' repeated");
  }
  for (int i = 0; i < d_; ++i)
    if (parts_[i].empty()) throw Error("DegenerateComplex", "part " + std::to_string(i + 1) + " has no vertices");
  vertex_facets_.assign(vertices_.size(), {});
  total_ = 0;
  std::set<std::vector<int>> seen;
  for (std::size_t f = 0; f < facets_.size(); ++f) {
    const auto& F = facets_[f];
    if (static_cast<int>(F.size()) != d_) throw Error("InvalidFacet", "facet does not have d vertices");
    for (int i = 0; i < d_; ++i) {
      if (F[i] < 0 || F[i] >= num_vertices() || vertices_[F[i]].part != i)
        throw Error("InvalidFacet", "facet must meet every part exactly once");
      vertex_facets_[F[i]].push_back(f);
    }
    if (!seen.insert(F).second) throw Error("InvalidFacet", "duplicate facet " + face_label(F));
    if (weights_[f] <= 0) throw Error("NonpositiveWeight", "facet weights must be positive");
    total_ += weights_[f];
  }
  for (int v = 0; v < num_vertices(); ++v)
    if (vertex_facets_[v].empty() && d_ > 0)
      throw Error("DegenerateComplex", "vertex '" + vertices_[v].label + "' lies in no facet");
}

PathComplex PathComplex::make(const std::vector<std::vector<std::string>>& parts,
                              const std::vector<FacetSpec>& facets, bool exact) {
  int d = static_cast<int>(parts.size());
  if (d < 1) throw Error("DegenerateComplex", "complex needs at least one part");
  std::vector<Vertex> vs;
  std::map<std::string, int> idx;
  for (int i = 0; i < d; ++i)
    for (const auto& l : parts[i]) {
      if (idx.count(l)) throw Error("DuplicateLabel", "vertex label '" + l + "' repeated");
      idx[l] = static_cast<int>(vs.size());
      vs.push_back(Vertex{i, l, i + 1, false, 0});
    }
  std::vector<std::vector<int>> fs;
  std::vector<Rational> ws;
  for (const auto& spec : facets) {
    std::vector<int> F(d, -1);
    if (static_cast<int>(spec.vertices.size()) != d) throw Error("InvalidFacet", "facet does not have d vertices");
    for (const auto& l : spec.vertices) {
      auto it = idx.find(l);
      if (it == idx.end()) throw Error("UnknownLabel", "unknown vertex '" + l + "'");
      int p = vs[it->second].part;
      if (F[p] != -1) throw Error("InvalidFacet", "facet meets part " + std::to_string(p + 1) + " twice");
      F[p] = it->second;
    }
    fs.push_back(std::move(F));
    ws.push_back(spec.weight);
  }
  std::vector<int> types(d);
  std::iota(types.begin(), types.end(), 1);
  return from_parts(d, std::move(vs), std::move(fs), std::move(ws), std::move(types), 0, d + 1, exact);
}

int PathComplex::find_vertex(const std::string& label) const {
  auto it = label_index_.find(label);
  return it == label_index_.end() ? -1 : it->second;
}

std::vector<std::size_t> PathComplex::facets_containing(const Face& tau) const {
  if (static_cast<int>(tau.size()) != d_) throw Error("NotAFace", "face has wrong slot count");
  const std::vector<std::size_t>* best = nullptr;
  for (int i = 0; i < d_; ++i) {
    if (tau[i] < 0) continue;
    if (tau[i] >= num_vertices() || vertices_[tau[i]].part != i) throw Error("NotAFace", "vertex in wrong slot");
    if (!best || vertex_facets_[tau[i]].size() < best->size()) best = &vertex_facets_[tau[i]];
  }
  std::vector<std::size_t> out;
  if (!best) {
    out.resize(facets_.size());
    std::iota(out.begin(), out.end(), 0);
    return out;
  }
  for (std::size_t f : *best) {
    bool ok = true;
    for (int i = 0; i < d_ && ok; ++i)
      if (tau[i] >= 0 && facets_[f][i] != tau[i]) ok = false;
    if (ok) out.push_back(f);
  }
  return out;
}

Rational PathComplex::face_weight(const Face& tau) const {
  Rational s = 0;
  for (std::size_t f : facets_containing(tau)) s += weights_[f];
  return s;
}

bool PathComplex::is_face(const Face& tau) const {
  if (static_cast<int>(tau.size()) != d_) return false;
  for (int i = 0; i < d_; ++i)
    if (tau[i] >= num_vertices() || (tau[i] >= 0 && vertices_[tau[i]].part != i)) return false;
  return !facets_containing(tau).empty();
}

Face PathComplex::face_of(const std::vector<int>& vertex_ids) const {
  Face tau(d_, -1);
  for (int v : vertex_ids) {
    if (v < 0 || v >= num_vertices()) throw Error("NotAFace", "vertex id out of range");
    int p = vertices_[v].part;
    if (tau[p] != -1 && tau[p] != v) throw Error("NotAFace", "two vertices in part " + std::to_string(p + 1));
    tau[p] = v;
  }
  return tau;
}

Face PathComplex::face_of_labels(const std::vector<std::string>& labels) const {
  std::vector<int> ids;
  for (const auto& l : labels) {
    int v = find_vertex(l);
    if (v < 0) throw Error("UnknownLabel", "unknown vertex '" + l + "'");
    ids.push_back(v);
  }
  return face_of(ids);
}

std::string PathComplex::face_label(const Face& tau) const {
  std::string s = "[";
  bool first = true;
  for (int v : tau) {
    if (v < 0) continue;
    if (!first) s += " ";
    s += vertices_[v].label;
    first = false;
  }
  return s + "]";
}

std::vector<Face> PathComplex::all_faces(std::size_t cap) const {
  std::set<Face> faces;
  for (const auto& F : facets_) {
    for (Mask m = 0; m < (Mask(1) << d_); ++m) {
      Face t(d_, -1);
      for (int i = 0; i < d_; ++i)
        if ((m >> i) & 1) t[i] = F[i];
      faces.insert(std::move(t));
      if (faces.size() > cap) throw Error("SizeLimitExceeded", "more than " + std::to_string(cap) + " faces");
    }
  }
  return {faces.begin(), faces.end()};
}

std::vector<Face> PathComplex::faces_of_codim(int codim, std::size_t cap) const {
  std::set<Face> faces;
  for (const auto& F : facets_) {
    for (Mask m = 0; m < (Mask(1) << d_); ++m) {
      if (d_ - popcount(m) != codim) continue;
      Face t(d_, -1);
      for (int i = 0; i < d_; ++i)
        if ((m >> i) & 1) t[i] = F[i];
      faces.insert(std::move(t));
      if (faces.size() > cap) throw Error("SizeLimitExceeded", "more than " + std::to_string(cap) + " faces");
    }
  }
  return {faces.begin(), faces.end()};
}

PathComplex PathComplex::with_weights(std::vector<Rational> w) const {
  if (w.size() != facets_.size()) throw Error("InvalidArgument", "weight count mismatch");
  PathComplex X = *this;
  X.weights_ = std::move(w);
  X.total_ = 0;
  for (auto& x : X.weights_) {
    if (x <= 0) throw Error("NonpositiveWeight", "facet weights must be positive");
    X.total_ += x;
  }
  return X;
}

// ---------------------------------------------------------------- builders

PathComplex chain_complex(const RankedLattice& L, const std::vector<Rational>* flat_weights, std::size_t cap) {
  if (!L.graded()) throw Error("RankGapDetected", "some maximal chain skips a rank");
  if (L.rank() < 2) throw Error("DomainError", "lattice rank must be at least 2");
  int d = L.rank() - 1;
  if (flat_weights && static_cast<int>(flat_weights->size()) != L.size())
    throw Error("InvalidArgument", "flat weight count mismatch");
  std::vector<int> vid(L.size(), -1);
  std::vector<Vertex> vs;
  for (int r = 1; r <= d; ++r)
    for (int f : L.flats_of_rank(r)) {
      vid[f] = static_cast<int>(vs.size());
      vs.push_back(Vertex{r - 1, L.flat_label(f), r, true, L.flat(f)});
    }
  std::vector<std::vector<int>> fs;
  std::vector<Rational> ws;
  for (const auto& chain : L.maximal_chains(cap)) {
    std::vector<int> F;
    Rational w = 1;
    for (int f : chain) {
      F.push_back(vid[f]);
      if (flat_weights) {
        if ((*flat_weights)[f] <= 0) throw Error("NonpositiveWeight", "flat weights must be positive");
        w *= (*flat_weights)[f];
      }
    }
    fs.push_back(std::move(F));
    ws.push_back(w);
  }
  std::vector<int> types(d);
  std::iota(types.begin(), types.end(), 1);
  PathComplex X = PathComplex::from_parts(d, std::move(vs), std::move(fs), std::move(ws), std::move(types), 0,
                                          d + 1, true);
  X.set_boundary_flats(L.flat(L.bottom()), L.flat(L.top()));
  return X;
}

std::vector<Rational> lift_element_weights(const RankedLattice& L, const std::map<std::string, Rational>& psi) {
  std::vector<Rational> pointw(L.ground_size());
  for (int e = 0; e < L.ground_size(); ++e) {
    auto it = psi.find(L.ground_labels()[e]);
    if (it == psi.end()) throw Error("MissingWeight", "no weight for '" + L.ground_labels()[e] + "'");
    if (it->second <= 0) throw Error("NonpositiveWeight", "element weights must be positive");
    pointw[e] = it->second;
  }
  std::vector<Rational> out(L.size(), 1);
  for (int f = 0; f < L.size(); ++f)
    for (int e = 0; e < L.ground_size(); ++e)
      if ((L.flat(f) >> e) & 1) out[f] *= pointw[e];
  return out;
}

PathComplex link(const PathComplex& X, const Face& tau) {
  auto fs = X.facets_containing(tau);
  if (fs.empty()) throw Error("NotAFace", X.face_label(tau) + " is not a face");
  std::vector<int> missing;
  for (int i = 0; i < X.d(); ++i)
    if (tau[i] < 0) missing.push_back(i);
  int dl = static_cast<int>(missing.size());
  Rational W = X.face_weight(tau);
  std::vector<int> new_id(X.num_vertices(), -1);
  std::vector<Vertex> vs;
  std::vector<int> parent;
  // vertices in part order, then by parent id
  for (int j = 0; j < dl; ++j) {
    std::set<int> here;
    for (std::size_t f : fs) here.insert(X.facet(f)[missing[j]]);
    for (int v : here) {
      new_id[v] = static_cast<int>(vs.size());
      Vertex x = X.vertex(v);
      x.part = j;
      vs.push_back(x);
      parent.push_back(X.parent_vertex()[v]);
    }
  }
  std::vector<std::vector<int>> facets;
  std::vector<Rational> ws;
  for (std::size_t f : fs) {
    std::vector<int> F(dl);
    for (int j = 0; j < dl; ++j) F[j] = new_id[X.facet(f)[missing[j]]];
    facets.push_back(std::move(F));
    ws.push_back(X.weight(f) / W);
  }
  std::vector<int> types(dl);
  for (int j = 0; j < dl; ++j) types[j] = X.part_type(missing[j]);
  PathComplex Y = PathComplex::from_parts(dl, std::move(vs), std::move(facets), std::move(ws), std::move(types),
                                          X.bottom_type(), X.top_type(), X.exact());
  if (X.has_boundary_flats()) Y.set_boundary_flats(X.bottom_flat(), X.top_flat());
  // parent_vertex refers to the root complex, so links of links compose
  Y.set_parent_vertex(std::move(parent));
  return Y;
}

// ---------------------------------------------------------------- checks

PathVerification verify_path_complex(const PathComplex& X, bool top_link_only) {
  PathVerification r;
  int d = X.d();
  auto faces = top_link_only ? X.faces_of_codim(2) : X.all_faces();
  for (const Face& tau : faces) {
    std::vector<int> missing;
    for (int i = 0; i < d; ++i)
      if (tau[i] < 0) missing.push_back(i);
    if (missing.size() < 2) continue;
    auto fs = X.facets_containing(tau);
    if (fs.size() < 2) continue;
    Rational W = 0;
    for (auto f : fs) W += X.weight(f);
    for (std::size_t a = 0; a < missing.size(); ++a)
      for (std::size_t b = a + 1; b < missing.size(); ++b) {
        int i = missing[a], k = missing[b];
        if (k <= i + 1) continue;
        bool meets = false;
        for (int j = i + 1; j < k; ++j) meets |= tau[j] >= 0;
        if (!meets) continue;
        std::map<int, Rational> wi, wk;
        std::map<std::pair<int, int>, Rational> joint;
        for (auto f : fs) {
          int F = X.facet(f)[i], K = X.facet(f)[k];
          wi[F] += X.weight(f);
          wk[K] += X.weight(f);
          joint[{F, K}] += X.weight(f);
        }
        ++r.checked;
        for (const auto& [F, wF] : wi)
          for (const auto& [K, wK] : wk) {
            auto it = joint.find({F, K});
            Rational j = it == joint.end() ? Rational(0) : it->second;
            if (j * W != wF * wK) {
              r.ok = false;
              r.F = F;
              r.K = K;
              r.tau = tau;
              r.message = "P[" + X.vertex(F).label + "," + X.vertex(K).label + " | " + X.face_label(tau) +
                          "] = " + to_string(j / W) + " but the product of marginals is " +
                          to_string(wF * wK / (W * W));
              return r;
            }
          }
      }
  }
  return r;
}

int link_components(const PathComplex& X, const Face& tau) {
  auto fs = X.facets_containing(tau);
  if (fs.empty()) throw Error("NotAFace", X.face_label(tau) + " is not a face");
  std::vector<int> parent(X.num_vertices());
  std::iota(parent.begin(), parent.end(), 0);
  std::set<int> present;
  for (auto f : fs) {
    int first = -1;
    for (int i = 0; i < X.d(); ++i) {
      if (tau[i] >= 0) continue;
      int v = X.facet(f)[i];
      present.insert(v);
      if (first < 0)
        first = v;
      else
        parent[find_root(parent, v)] = find_root(parent, first);
    }
  }
  std::set<int> roots;
  for (int v : present) roots.insert(find_root(parent, v));
  return static_cast<int>(roots.size());
}

bool check_connected(const PathComplex& X) {
  for (const Face& tau : X.all_faces()) {
    int codim = static_cast<int>(std::count(tau.begin(), tau.end(), -1));
    if (codim < 2) continue;
    if (link_components(X, tau) != 1) return false;
  }
  return true;
}

Contiguity classify_contiguity(const PathComplex& X, const Face& sigma) {
  if (!X.is_face(sigma)) throw Error("NotAFace", "not a face");
  auto window = [&](bool present) -> std::optional<std::pair<int, int>> {
    int lo = -1, hi = -1, count = 0;
    for (int i = 0; i < X.d(); ++i)
      if ((sigma[i] >= 0) == present) {
        if (lo < 0) lo = i;
        hi = i;
        ++count;
      }
    if (count == 0 || hi - lo + 1 != count) return std::nullopt;
    return std::make_pair(lo + 1, hi + 1);
  };
  return Contiguity{window(true), window(false)};
}

PathComplex apply_external_field(const PathComplex& X, const std::vector<Rational>& vertex_weights) {
  if (static_cast<int>(vertex_weights.size()) != X.num_vertices())
    throw Error("InvalidArgument", "one weight per vertex required");
  for (const auto& w : vertex_weights)
    if (w <= 0) throw Error("NonpositiveWeight", "vertex weights must be positive");
  std::vector<Rational> ws(X.num_facets());
  Rational total = 0;
  for (std::size_t f = 0; f < X.num_facets(); ++f) {
    Rational w = X.weight(f);
    for (int v : X.facet(f)) w *= vertex_weights[v];
    ws[f] = w;
    total += w;
  }
  for (auto& w : ws) w /= total;
  return X.with_weights(std::move(ws));
}

std::map<std::vector<int>, Rational> marginal(const PathComplex& X, const std::vector<int>& parts) {
  for (int p : parts)
    if (p < 0 || p >= X.d()) throw Error("IndexOutOfRange", "part index out of range");
  std::map<std::vector<int>, Rational> out;
  for (std::size_t f = 0; f < X.num_facets(); ++f) {
    std::vector<int> key;
    for (int p : parts) key.push_back(X.facet(f)[p]);
    out[key] += X.weight(f);
  }
  for (auto& [k, v] : out) v /= X.total_weight();
  return out;
}

FactorizationReport check_split_factorization(const PathComplex& X) {
  FactorizationReport r;
  int d = X.d();
  for (int v = 0; v < X.num_vertices(); ++v) {
    int i = X.vertex(v).part;
    Face tau = X.empty_face();
    tau[i] = v;
    auto fs = X.facets_containing(tau);
    Rational W = 0;
    std::map<std::vector<int>, Rational> left, right;
    std::map<std::pair<std::vector<int>, std::vector<int>>, Rational> joint;
    for (auto f : fs) {
      std::vector<int> l(X.facet(f).begin(), X.facet(f).begin() + i);
      std::vector<int> rr(X.facet(f).begin() + i + 1, X.facet(f).begin() + d);
      W += X.weight(f);
      left[l] += X.weight(f);
      right[rr] += X.weight(f);
      joint[{l, rr}] += X.weight(f);
    }
    ++r.checked;
    for (const auto& [l, wl] : left)
      for (const auto& [rr, wr] : right) {
        auto it = joint.find({l, rr});
        Rational j = it == joint.end() ? Rational(0) : it->second;
        if (j * W != wl * wr) {
          r.ok = false;
          r.vertex = v;
          return r;
        }
      }
  }
  return r;
}

}  // namespace pcx
