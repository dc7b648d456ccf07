// File format and serialization: basis-set files (human-diffable JSON with
// explicit [re, im] pairs), equivalence-witness move lists, and the tool
// version stamped into every report.
#pragma once

#include <string>

#include "mub/equivalence.hpp"
#include "mub/types.hpp"

namespace mub {

inline constexpr const char* kToolName = "mub";
inline constexpr const char* kToolVersion = "0.1.0";

// Schema violations carry the precise path of the offending element.
class FileFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LoadOptions {
  bool normalize = false;           // renormalize factors instead of rejecting
  double norm_tol = kNormRejectTol; // rejection threshold on factor norms
};

std::string mubset_to_json_text(const MubSet& s);
MubSet mubset_from_json_text(const std::string& text,
                             const LoadOptions& options = {});

void save_mubset(const MubSet& s, const std::string& path);
MubSet load_mubset(const std::string& path, const LoadOptions& options = {});

std::string moves_to_json_text(const std::vector<EquivalenceMove>& moves);
std::vector<EquivalenceMove> moves_from_json_text(const std::string& text);

}  // namespace mub
