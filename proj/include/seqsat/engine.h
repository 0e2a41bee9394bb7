#pragma once

#include <chrono>
#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <string>

#include "seqsat/config.h"
#include "seqsat/congruence.h"
#include "seqsat/lia.h"
#include "seqsat/model.h"
#include "seqsat/term.h"

namespace seqsat {

enum class mode { base, ext };
enum class verdict { sat, unsat, unknown };

const char* to_string(verdict v);
const char* to_string(mode m);

struct engine_options {
    mode calculus = mode::ext;
    // rule applications; shared by all runs of one engine object
    std::size_t step_limit = 100000;
    // C-Split applications on one variable along a branch
    std::size_t split_depth_cap = 64;
    std::size_t max_depth = 4000;
    std::optional<std::chrono::steady_clock::time_point> deadline;
    std::ostream* trace = nullptr;
    // at saturation, recompute normal forms by exhaustive derivation and compare
    bool check_normal_forms = false;
    lia_options lia;
};

struct engine_stats {
    std::size_t steps = 0;
    std::map<std::string, std::size_t> rules;
    std::size_t nf_checks = 0;
    std::size_t nf_mismatches = 0;
};

struct engine_result {
    verdict status = verdict::unknown;
    std::optional<model> sat_model;
    // final configuration of the satisfiable branch
    std::optional<configuration> saturated;
    std::string reason;
};

/*
  Depth-first search over configurations following the fixed rule
  priorities; BASE reduces nth/update to concatenations, EXT reasons about
  them directly.
*/
class engine {
public:
    engine(term_manager& tm, engine_options opts);
    ~engine();

    engine_result run(configuration cfg);

    const engine_stats& stats() const { return m_stats; }
    const engine_options& options() const { return m_opts; }

private:
    term_manager& m_tm;
    engine_options m_opts;
    engine_stats m_stats;
};

// every derivable flattening of the class of x, as representatives; used to
// cross-check cached normal forms
// throws resource_error past limit derivations
std::vector<std::vector<term_id>> derivable_normal_forms(const term_manager& tm, const configuration& cfg,
                                                         const congruence& cc, term_id x, std::size_t limit = 10000);

} // namespace seqsat
