#pragma once

// Reports produced by the command-line tool. Every report is a JSON object
// whose first two fields are "schema" and "command"; "status" is one of
// "ok", "refuted", "unknown", "fail". The machine form is the JSON text,
// the text form a readable rendering of the same data.

#include "rht/io.hpp"
#include "rht/verification.hpp"

#include "json.hpp"

#include <map>
#include <optional>
#include <string>

namespace rht {

inline constexpr const char* report_schema = "rht-report/1";

struct Report {
    nlohmann::ordered_json doc;
    // Wall-clock seconds per criterion; shown in text form only so machine
    // output stays byte-stable.
    std::map<std::string, double> timings;

    [[nodiscard]] std::string status() const;
    /// 0 for ok/unknown, 1 for refuted/fail.
    [[nodiscard]] int exit_code() const;
};

/// The algebra the pairing and distortion commands work in: a minimal cdga
/// file is used as is, anything else is replaced by its minimal model.
struct WorkingModel {
    Cdga model;
    bool computed = false; // true when minimal_model was run
    int cap = 0;
};
WorkingModel working_model(const Presentation& p, int cap);

Report report_cohomology(const Presentation& p, std::optional<int> degree, int through);
Report report_model(const Presentation& p, int through, bool bigraded);
Report report_distortion(const Presentation& p, const std::string& generator, int cap);
Report report_scalable(const std::string& descriptor);
Report report_pair(const Presentation& p, const std::string& generator, const std::string& bracket,
                   const std::optional<Rational>& scale, int cap);
Report report_verify(const VerifyOptions& options);

std::string render_machine(const Report& r);
std::string render_text(const Report& r);

/// Parses machine output back; throws std::invalid_argument on a wrong schema.
Report parse_report(const std::string& machine_text);

} // namespace rht
