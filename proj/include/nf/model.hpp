#ifndef NF_MODEL_HPP
#define NF_MODEL_HPP

#include <map>
#include <string>
#include <vector>

#include "nf/errors.hpp"
#include "nf/formula.hpp"

namespace nf {

// A hereditarily finite set in canonical form: members sorted by
// (rank, encoding) and deduplicated.
class HfSet {
 public:
  HfSet() = default;  // the empty set
  explicit HfSet(std::vector<HfSet> members);

  static HfSet empty() { return HfSet(); }
  static HfSet singleton(HfSet member);

  // Brace notation, e.g. "{}", "{{},{{}}}".
  static HfSet parse(const std::string& text);

  const std::vector<HfSet>& members() const { return members_; }
  int rank() const { return rank_; }
  // Canonical brace encoding; equal sets have equal encodings.
  const std::string& key() const { return key_; }

  bool operator==(const HfSet& other) const { return key_ == other.key_; }
  bool operator<(const HfSet& other) const {
    return rank_ != other.rank_ ? rank_ < other.rank_ : key_ < other.key_;
  }

 private:
  std::vector<HfSet> members_;
  int rank_ = 0;
  std::string key_ = "{}";
};

// The Wiener encoding {{{a}, 0}, {{b}}} as a plain value.
HfSet hf_wiener_pair(const HfSet& a, const HfSet& b);

// All hereditarily finite sets of rank <= max_rank (1, 2, 4, 16, 65536...
// elements; max_rank <= 4 keeps this tractable).
std::vector<HfSet> hf_sets_up_to_rank(int max_rank);

// A finite membership structure. Quantifiers range over all elements.
struct Universe {
  std::vector<std::string> elements;            // element ids, fixed order
  std::vector<std::vector<bool>> membership;    // membership[m][c]: m in c
  std::map<std::string, std::string> labels;    // name -> element id
  bool extensional = false;  // no two elements share a member set

  int index_of(const std::string& element) const;  // -1 when absent
  // Resolves a label or element id; throws ModelError when unknown.
  int resolve(const std::string& name) const;
  bool member(int m, int c) const { return membership[m][c]; }
  int size() const { return static_cast<int>(elements.size()); }
};

// Elements are the transitive closures of the seeds plus the empty set,
// deduplicated extensionally, ordered by (rank, encoding) and named
// e0, e1, ...; labels["0"] is the empty set. Throws ModelError when a seed
// exceeds rank_cap or rank_cap > 6.
Universe build_hf_universe(const std::vector<HfSet>& seeds, int rank_cap);

// The element extensionally equal to {{{a}, 0}, {{b}}}; throws ModelError
// when an intermediate set is missing from the universe.
int wiener_pair(int a, int b, const Universe& u);

using Environment = std::map<VarName, int>;  // variable -> element index

// Tarskian satisfaction; quantifiers range over all elements. Sugar nodes
// are evaluated by their meaning (chains as conjunctions, bounds as
// relativization, exists-unique as exactly-one). Throws ModelError on a
// variable missing from the environment.
bool eval(const Formula& f, const Universe& u, const Environment& env);

}  // namespace nf

#endif
