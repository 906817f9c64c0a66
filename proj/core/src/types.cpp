#include "claimgraph/types.hpp"

#include "claimgraph/errors.hpp"

namespace claimgraph {

const char* relation_name(Relation r) {
  switch (r) {
    case Relation::cite: return "cite";
    case Relation::term: return "term";
    case Relation::func: return "func";
    case Relation::both: return "both";
  }
  return "?";
}

Relation relation_from_name(const std::string& name) {
  if (name == "cite") return Relation::cite;
  if (name == "term") return Relation::term;
  if (name == "func") return Relation::func;
  if (name == "both") return Relation::both;
  throw MalformedRecord("unknown relation name: " + name);
}

}  // namespace claimgraph
