#include "seqderiv/error.hpp"

namespace seqderiv {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_set: return "invalid-set";
    case ErrorKind::empty_set: return "empty-set";
    case ErrorKind::index: return "index";
    case ErrorKind::domain: return "domain";
    case ErrorKind::param: return "param";
    case ErrorKind::invalid_map: return "invalid-map";
    case ErrorKind::insufficient_data: return "insufficient-data";
    case ErrorKind::bracket: return "bracket";
    case ErrorKind::search_failure: return "search-failure";
  }
  return "unknown";
}

}  // namespace seqderiv
