// Licensed under the Apache License, Version 2.0.
// Truncated simplicial sets, standard complexes, hom enumeration and Kan checks.
#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "common.hpp"
#include "report.hpp"

namespace fhg {

// Levels 0..N. face[n][i][c] is d_i on level n (n >= 1), degen[n][i][c] is s_i on level n (n < N).
// Cells of each level are sorted by id; indices are positions in that order.
struct SSet {
  int N = 0;
  std::vector<Ids> cells;
  std::vector<std::vector<std::vector<int>>> face;
  std::vector<std::vector<std::vector<int>>> degen;

  int size(int n) const { return static_cast<int>(cells[n].size()); }
  int index(int n, const std::string& id) const { return find_id(cells[n], id); }
  bool operator==(const SSet&) const = default;
};

// Allocates empty tables for truncation level N with the given level sizes.
SSet make_sset(int N, const std::vector<Ids>& cells);

// Sorts every level by id and rewrites the tables accordingly.
void canonicalize(SSet& X);

// A weakly monotone map [n] -> [p], stored as its value sequence.
using Mono = std::vector<int>;

// The cell X(sigma)(y) for y in level p and sigma: [n] -> [p].
int apply_mono(const SSet& X, const Mono& sigma, int p, int y);

// y = s_{i_k} ... s_{i_1} z with z nondegenerate, written as sigma^* z for a surjection sigma.
struct EZ {
  Mono sigma;
  int level = 0;
  int cell = 0;
};
EZ ez_decompose(const SSet& X, int n, int c);

SSet standard_simplex(int m, int N);
// Sub-simplicial-set of the m-simplex of cells whose vertex image (as a bitmask) passes keep.
// keep must be closed under taking subsets.
SSet simplex_subcomplex(int m, int N, const std::function<bool(unsigned)>& keep);
SSet horn_complex(int m, int j, int N);
SSet boundary_complex(int m, int N);
SSet constant_sset(Ids points, int N);
Mono parse_mono(const std::string& digits);

Report verify_simplicial(const SSet& X);
std::vector<int> nondegenerate_cells(const SSet& X, int n);

using LevelMap = std::vector<std::vector<int>>;

struct SimplicialMap {
  std::shared_ptr<const SSet> source;
  std::shared_ptr<const SSet> target;
  LevelMap f;
};

Report verify_simplicial_map(const SimplicialMap& f);
SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f);  // g after f
SimplicialMap identity_map(std::shared_ptr<const SSet> X);
// Inclusion of a sub-simplicial-set, matched by cell id.
SimplicialMap inclusion_map(std::shared_ptr<const SSet> sub, std::shared_ptr<const SSet> whole);

// All simplicial maps S -> X in canonical order (lexicographic in the images of the
// nondegenerate cells of S, ordered by level then index).
std::vector<LevelMap> enumerate_hom(const SSet& S, const SSet& X);

// Images of the nondegenerate cells of S, in canonical order. Used to key hom elements.
std::vector<int> nondegenerate_key(const SSet& S, const LevelMap& f);

enum class KanStatus { HoldsUniquely, Holds, Fails };

struct KanResult {
  KanStatus status = KanStatus::Fails;
  std::size_t horns = 0;
  std::size_t simplices = 0;
  std::string witness;  // unfilled horn, or colliding pair when only uniqueness fails
  bool unique = false;
};

KanResult check_kan(const SSet& X, int m, int j);

// Kan(m,j) for 1 <= m <= up_to, all j; unique fillers required for m >= unique_from.
// unique_from < 0 selects the default n + 1.
Report verify_n_groupoid(const SSet& X, int n, int up_to, int unique_from = -1);

SSet skeleton(const SSet& X, int k);
// Keeps levels <= k of X and fills levels k+1..N with boundary-compatible families.
SSet coskeleton(const SSet& X, int k, int N);
SSet truncate_levels(const SSet& X, int N);

std::string describe_cell(const SSet& X, int n, int c);

}  // namespace fhg
