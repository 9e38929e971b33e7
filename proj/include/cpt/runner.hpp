#ifndef CPT_RUNNER_HPP
#define CPT_RUNNER_HPP

#include <string>
#include <utility>
#include <vector>

#include "cpt/config.hpp"

namespace cpt {

// Executes scenarios end to end: builds the requested quantities, writes CSV
// files plus a key-value manifest, and reports what was produced. CSV bodies
// are deterministic byte for byte (fixed column order, %.17g values, '\n'
// newlines, fixed summation order upstream); the manifest additionally
// carries the wall-clock duration, so only it may differ between runs.

struct RunManifest {
    std::string status = "ok"; // "ok" or "error"
    std::string error_class;
    std::string error_message;
    double duration_seconds = 0.0;
    std::vector<std::pair<std::string, std::string>> derived;
    std::vector<std::string> files; // as written, manifest last
    std::vector<std::pair<std::string, std::string>> members; // sweeps: label -> status
    std::string manifest_path;
};

// Prefix resolution: relative prefixes are placed under $CPTLOC_OUT_DIR when
// that is set (else the working directory); parent directories are created.
// Throws IoError when the directory cannot be created.
std::string resolve_out_prefix(const std::string& prefix);

// Runs one non-sweep scenario. On a module error the manifest is still
// written (status = "error") and the error is rethrown for exit-code
// mapping.
RunManifest run_scenario(const Scenario& s);

// Runs every sweep member (up to `jobs` concurrently), then the summary CSV
// and manifest. Member failures do not stop the other members; after all
// complete, the first failure (in value order) is rethrown.
RunManifest run_sweep(const Scenario& s, int jobs);

// Dispatch on s.kind.
RunManifest run_any(const Scenario& s, int jobs = 1);

} // namespace cpt

#endif
