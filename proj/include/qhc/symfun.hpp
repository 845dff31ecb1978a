// Symmetric functions and Weyl antisymmetrization for products of symmetric groups.
#pragma once

#include <string>
#include <vector>

#include "qhc/poly.hpp"

namespace qhc {

// A cocharacter: one integer per variable of the table (nonzero only on XI).
using Cocharacter = std::vector<int>;

struct Block {
  std::string node;
  std::vector<std::size_t> vars;  // XI variable indices, root order
};

struct BlockStructure {
  std::vector<Block> blocks;
  std::size_t weyl_order() const;
};

// e_i and h_i of a list of polynomials (usually variables or linear forms).
// e_0 = h_0 = 1; h_i = 0 for i < 0; e_i = 0 for i > size.
MultiPoly elementary(const VarTablePtr& ctx, const std::vector<MultiPoly>& xs, int i);
MultiPoly complete(const VarTablePtr& ctx, const std::vector<MultiPoly>& xs, int i);

// All e_0..e_n at once.
std::vector<MultiPoly> elementary_all(const VarTablePtr& ctx, const std::vector<MultiPoly>& xs);

// (1/e) sum_w (-1)^{l(w)} w.(prefactor * prod xi^exponents) over the product of
// the blocks' symmetric groups; exponents[b][j] belongs to blocks[b].vars[j].
MultiPoly antisymmetrize(const std::vector<std::vector<int>>& exponents, const BlockStructure& blocks,
                         const MultiPoly& prefactor);
MultiPoly antisymmetrize_serial(const std::vector<std::vector<int>>& exponents,
                                const BlockStructure& blocks, const MultiPoly& prefactor);

// Product over blocks of prod_{i<j} (xi_i - xi_j).
MultiPoly vandermonde(const VarTablePtr& ctx, const BlockStructure& blocks);

// <2 rho, d> for the block root system.
int rho_pairing(const BlockStructure& blocks, const Cocharacter& d);

}  // namespace qhc
