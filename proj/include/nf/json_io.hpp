#ifndef NF_JSON_IO_HPP
#define NF_JSON_IO_HPP

#include <nlohmann/json_fwd.hpp>

#include "nf/corpus.hpp"
#include "nf/graph.hpp"
#include "nf/model.hpp"
#include "nf/pathtype.hpp"
#include "nf/stratify.hpp"

namespace nf {

using json = nlohmann::json;

json graph_json(const VarGraph& g);
json cycle_json(const CycleWitness& w);

// {"acyclic": bool, "cycle": {...} | null}
json acyclic_verdict_json(const std::optional<CycleWitness>& cycle);

// {"stratified": bool, "types": {...} | null, "certificate": {...} | null}
json stratify_verdict_json(const StratifyResult& r);

json certificate_json(const UnsatCertificate& c);
json types_json(const TypeAssignment& t);

// {"roots": {...}, "types": {...}}
json trace_json(const PathTypingTrace& t);

json corpus_report_json(const CorpusReport& r);

json universe_json(const Universe& u);
Universe universe_from_json(const json& j);
Universe load_universe(const std::string& path);

}  // namespace nf

#endif
