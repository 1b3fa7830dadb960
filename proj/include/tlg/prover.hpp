#pragma once

#include <vector>

#include "tlg/proof.hpp"

namespace tlg {

struct SearchConfig {
  int k = 2;                 // bound on copies per !L instance
  int depth_limit = 64;      // rule applications along one branch
  int max_proofs = 16;       // distinct proofs returned (and kept per subgoal)
  bool enumerate_all = true; // false: stop at the first proof found
};

enum class SearchStatus { Proved, Unprovable, DepthExhausted };

struct SearchResult {
  std::vector<ProofTree> proofs;  // sorted by (size, proof_key)
  SearchStatus status = SearchStatus::Unprovable;
  bool truncated = false;  // some branch hit the depth limit
};

/// Cut-free backward proof search. @-formulas are relocated on demand and
/// every relocation is recorded as explicit Perm nodes, so each returned
/// tree passes check_proof(tree, cfg.k). Proofs equal up to Perm placement
/// are reported once.
SearchResult prove(const Sequent& seq, const SearchConfig& cfg = {});

}  // namespace tlg
