#ifndef PCX_COMPLEX_HPP
#define PCX_COMPLEX_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pcx/numeric.hpp"
#include "pcx/order.hpp"

namespace pcx {

// A face is stored as one slot per part: the vertex id in that part, or -1.
using Face = std::vector<int>;

struct Vertex {
  int part = 0;        // position 0..d-1 within this complex
  std::string label;
  int type = 0;        // absolute type index (rank for lattice complexes)
  bool has_flat = false;
  Mask flat = 0;       // the flat, for complexes built from lattices
};

// Pure d-partite complex with positive facet weights.  Weights are kept raw;
// probabilities are weight / total.  Links keep the absolute type indices of
// their parts and the boundary types of the parent.
class PathComplex {
 public:
  struct FacetSpec {
    std::vector<std::string> vertices;  // one label per part, in part order
    Rational weight;
  };

  PathComplex() = default;
  // parts[i] = labels of T_{i+1}; types default to 1..d with boundary types 0 and d+1.
  static PathComplex make(const std::vector<std::vector<std::string>>& parts,
                          const std::vector<FacetSpec>& facets, bool exact = true);

  int d() const { return d_; }
  bool exact() const { return exact_; }
  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  const Vertex& vertex(int v) const { return vertices_[v]; }
  int find_vertex(const std::string& label) const;  // -1 if absent
  const std::vector<int>& part(int i) const { return parts_[i]; }
  int part_type(int i) const { return part_types_[i]; }
  int bottom_type() const { return bottom_type_; }
  int top_type() const { return top_type_; }
  bool has_boundary_flats() const { return has_boundary_flats_; }
  Mask bottom_flat() const { return bottom_flat_; }
  Mask top_flat() const { return top_flat_; }

  std::size_t num_facets() const { return facets_.size(); }
  const std::vector<int>& facet(std::size_t f) const { return facets_[f]; }
  const Rational& weight(std::size_t f) const { return weights_[f]; }
  const Rational& total_weight() const { return total_; }
  Rational prob(std::size_t f) const { return weights_[f] / total_; }

  // ids of facets containing the face (a face with all slots -1 is the empty face)
  std::vector<std::size_t> facets_containing(const Face& tau) const;
  Rational face_weight(const Face& tau) const;  // raw weight of facets containing tau
  bool is_face(const Face& tau) const;
  Face empty_face() const { return Face(d_, -1); }
  Face facet_face(std::size_t f) const { return facets_[f]; }
  Face face_of(const std::vector<int>& vertex_ids) const;  // NotAFace on clashes
  Face face_of_labels(const std::vector<std::string>& labels) const;
  std::string face_label(const Face& tau) const;

  // All faces (including the empty face and facets), sorted.
  std::vector<Face> all_faces(std::size_t cap = 5000000) const;
  std::vector<Face> faces_of_codim(int codim, std::size_t cap = 5000000) const;

  // Link parent bookkeeping: vertex ids of this complex in its parent.
  const std::vector<int>& parent_vertex() const { return parent_vertex_; }

  // Re-weights facets (used by link and external fields).
  PathComplex with_weights(std::vector<Rational> w) const;

  // Internal constructor used by builders.
  static PathComplex from_parts(int d, std::vector<Vertex> vertices, std::vector<std::vector<int>> facets,
                                std::vector<Rational> weights, std::vector<int> part_types, int bottom_type,
                                int top_type, bool exact);
  void set_parent_vertex(std::vector<int> p) { parent_vertex_ = std::move(p); }
  void set_boundary_flats(Mask bottom, Mask top) {
    has_boundary_flats_ = true;
    bottom_flat_ = bottom;
    top_flat_ = top;
  }

 private:
  void index();

  int d_ = 0;
  bool exact_ = true;
  std::vector<Vertex> vertices_;
  std::vector<std::vector<int>> parts_;
  std::vector<int> part_types_;
  int bottom_type_ = 0, top_type_ = 1;
  bool has_boundary_flats_ = false;
  Mask bottom_flat_ = 0, top_flat_ = 0;
  std::vector<std::vector<int>> facets_;
  std::vector<Rational> weights_;
  Rational total_ = 0;
  std::vector<std::vector<std::size_t>> vertex_facets_;
  std::map<std::string, int> label_index_;
  std::vector<int> parent_vertex_;
};

// Complex of flags of proper flats; T_k = rank-k flats.  flat_weights (indexed
// by flat id) multiply into facet weights when given.
PathComplex chain_complex(const RankedLattice& L, const std::vector<Rational>* flat_weights = nullptr,
                          std::size_t cap = 200000);
// psi(F) = product over elements of F of psi(element), per flat.
std::vector<Rational> lift_element_weights(const RankedLattice& L, const std::map<std::string, Rational>& psi);

PathComplex link(const PathComplex& X, const Face& tau);

struct PathVerification {
  bool ok = true;
  long checked = 0;
  // first violation: vertices F (part i), K (part k) and the face tau
  int F = -1, K = -1;
  Face tau;
  std::string message;
};
PathVerification verify_path_complex(const PathComplex& X, bool top_link_only = false);

bool check_connected(const PathComplex& X);
// Connected components of the 1-skeleton of the link of tau.
int link_components(const PathComplex& X, const Face& tau);

struct Contiguity {
  std::optional<std::pair<int, int>> contiguous;       // 1-based part window met by sigma
  std::optional<std::pair<int, int>> link_contiguous;  // 1-based window of missing parts
};
Contiguity classify_contiguity(const PathComplex& X, const Face& sigma);

PathComplex apply_external_field(const PathComplex& X, const std::vector<Rational>& vertex_weights);

// Exact marginal on the listed parts (0-based), keyed by the vertex tuple.
std::map<std::vector<int>, Rational> marginal(const PathComplex& X, const std::vector<int>& parts);

// For every vertex F in part i, the conditional law given F is the product of
// its marginals on parts before i and after i.
struct FactorizationReport {
  bool ok = true;
  long checked = 0;
  int vertex = -1;
};
FactorizationReport check_split_factorization(const PathComplex& X);

}  // namespace pcx

#endif
