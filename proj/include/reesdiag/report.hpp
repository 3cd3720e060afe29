#pragma once

#include "reesdiag/model.hpp"

#include <string>

namespace reesdiag {

// Command dispatch result: canonical JSON report plus the process exit
// code (0 success, 2 mathematical obstruction, 1 error).
struct RunReport {
    nlohmann::json body;
    int exit_code = 0;

    std::string dump() const { return body.dump(2) + "\n"; }
};

struct RunOptions {
    std::string command;
    std::string model_path;
    long precision = 0; // 0: use the model's
    int level = -1;     // -1: top level
    std::uint64_t seed = 0;
    std::string format = "json";
    std::string out;
    int one_level = 1;
    int one_index = 0;
    int samples = 32;
};

// Exit code 2 is reserved for mathematically negative verdicts so that
// test harnesses can assert on obstruction fixtures.
int exit_code_for(ErrorKind k);

RunReport run(const RunOptions& opts);

// JSON helpers shared with the plot emitter.
nlohmann::json rational_json(const Rational& q);
nlohmann::json qvec_json(const QVec& v);
nlohmann::json point_json(const SkeletonComplex& k, const SkeletonPoint& p);

} // namespace reesdiag
