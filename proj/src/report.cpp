#include "rht/report.hpp"

#include "rht/classify.hpp"
#include "rht/cohomology.hpp"
#include "rht/minimal_model.hpp"
#include "rht/whitehead.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace rht {

using json = nlohmann::ordered_json;

namespace {

json header(const std::string& command)
{
    json j;
    j["schema"] = report_schema;
    j["command"] = command;
    return j;
}

std::string kind_name(const Presentation& p)
{
    return p.kind == Presentation::Kind::Ring ? "ring" : "cdga";
}

json source_of(const Presentation& p)
{
    json j;
    j["kind"] = kind_name(p);
    j["name"] = p.name;
    return j;
}

json certificate_json(const Certificate& c)
{
    json j;
    j["kind"] = c.kind;
    json f = json::object();
    for (const auto& [k, v] : c.fields)
        f[k] = v;
    j["fields"] = f;
    j["summary"] = c.summary;
    return j;
}

json generator_table(const Cdga& a)
{
    const auto depth = depth_filtration(a);
    json gens = json::array();
    for (std::size_t i = 0; i < a.generator_count(); ++i) {
        const auto& g = a.generator(i);
        json e;
        e["name"] = g.name;
        e["degree"] = g.degree;
        if (g.stage)
            e["stage"] = *g.stage;
        e["depth"] = depth.depth[i];
        e["d"] = format_element(a, a.d_of_generator(i));
        gens.push_back(e);
    }
    return gens;
}

json filtration_table(const Cdga& a)
{
    const auto depth = depth_filtration(a);
    int max_depth = 0;
    for (int d : depth.depth)
        max_depth = std::max(max_depth, d);
    json rows = json::array();
    for (int k = 0; k <= a.max_generator_degree(); ++k) {
        json counts = json::array();
        std::size_t total = 0;
        for (int l = 0; l <= max_depth; ++l) {
            const auto c = depth.count_exact(a, k, l);
            counts.push_back(c);
            total += c;
        }
        if (total == 0)
            continue;
        json row;
        row["degree"] = k;
        row["by_depth"] = counts;
        rows.push_back(row);
    }
    return rows;
}

json classification_json(const Classification& c)
{
    json j;
    j["descriptor"] = c.descriptor;
    j["verdict"] = to_string(c.verdict);
    j["certificate"] = certificate_json(c.certificate);
    if (c.ring) {
        j["ring"] = c.ring->name;
        j["ranks"] = c.ring->ranks();
    }
    if (c.rank_bound) {
        json rb;
        rb["dimension"] = c.rank_bound->manifold_dimension;
        rb["pass"] = c.rank_bound->pass();
        if (auto f = c.rank_bound->first_failure()) {
            rb["failing_degree"] = f->degree;
            rb["rank"] = f->rank;
            rb["bound"] = f->bound;
        }
        j["rank_bound"] = rb;
    }
    if (c.witness) {
        json w;
        w["target_dimension"] = c.witness->target.dimension();
        w["verified"] = c.witness_verified;
        constexpr std::size_t max_images = 64;
        if (c.ring && c.witness->images.size() <= max_images) {
            json imgs = json::object();
            for (std::size_t i = 0; i < c.witness->images.size(); ++i)
                imgs[c.ring->ring.generator(i).name] =
                    format_element(c.witness->target.algebra(), c.witness->images[i]);
            w["images"] = imgs;
        } else {
            w["image_count"] = c.witness->images.size();
        }
        if (!c.witness->notes.empty())
            w["notes"] = c.witness->notes;
        j["witness"] = w;
    }
    if (!c.parts.empty()) {
        json parts = json::array();
        for (const auto& p : c.parts)
            parts.push_back(classification_json(p));
        j["parts"] = parts;
    }
    return j;
}

void leaf_degree_sum(const Cdga& a, const BracketExpr& e, long& sum)
{
    if (e.is_leaf()) {
        sum += a.generator(a.index_of(e.name)).degree;
        return;
    }
    leaf_degree_sum(a, *e.left, sum);
    leaf_degree_sum(a, *e.right, sum);
}

} // namespace

std::string Report::status() const
{
    return doc.value("status", std::string("ok"));
}

int Report::exit_code() const
{
    const auto s = status();
    return (s == "refuted" || s == "fail") ? 1 : 0;
}

WorkingModel working_model(const Presentation& p, int cap)
{
    WorkingModel w;
    w.cap = cap;
    if (p.kind == Presentation::Kind::Cdga && p.algebra.is_free() && !minimality_defect(p.algebra)) {
        w.model = p.algebra;
        return w;
    }
    w.model = minimal_model(p.algebra, cap).model;
    w.computed = true;
    return w;
}

Report report_cohomology(const Presentation& p, std::optional<int> degree, int through)
{
    Report r;
    r.doc = header("cohomology");
    r.doc["source"] = source_of(p);
    const int lo = degree ? *degree : 0;
    const int hi = degree ? *degree : through;
    if (lo < 0)
        throw std::invalid_argument("degree must be non-negative");
    r.doc["cap"] = hi;
    json ranks = json::array();
    json degrees = json::array();
    for (int k = lo; k <= hi; ++k) {
        const auto h = cohomology(p.algebra, k, hi);
        ranks.push_back(h.rank);
        json e;
        e["degree"] = k;
        e["rank"] = h.rank;
        e["dimension"] = h.dimension;
        e["cocycles"] = h.cocycle_rank;
        e["coboundaries"] = h.coboundary_rank;
        json reps = json::array();
        for (const auto& c : h.classes)
            reps.push_back(format_element(p.algebra, c.representative));
        e["representatives"] = reps;
        degrees.push_back(e);
    }
    r.doc["ranks"] = ranks;
    r.doc["degrees"] = degrees;
    r.doc["status"] = "ok";
    return r;
}

Report report_model(const Presentation& p, int through, bool bigraded)
{
    if (bigraded && p.kind != Presentation::Kind::Ring)
        throw std::invalid_argument("--bigraded needs a ring file");
    const MinimalModel m = bigraded ? bigraded_model(p.algebra, through) : minimal_model(p.algebra, through);
    Report r;
    r.doc = header("model");
    r.doc["source"] = source_of(p);
    r.doc["cap"] = through;
    r.doc["bigraded"] = bigraded;
    r.doc["generators"] = generator_table(m.model);
    r.doc["filtration"] = filtration_table(m.model);
    const auto defect = minimality_defect(m.model);
    r.doc["minimal"] = !defect.has_value();
    if (!m.trivial) {
        const auto qi = check_quasi_isomorphism(m.quasi_iso, through);
        r.doc["quasi_isomorphism"] = qi.ok;
        if (qi.failing_degree)
            r.doc["failing_degree"] = *qi.failing_degree;
    }
    r.doc["warnings"] = m.warnings;
    r.doc["status"] = (!defect && (m.trivial || r.doc["quasi_isomorphism"].get<bool>())) ? "ok" : "fail";
    return r;
}

Report report_distortion(const Presentation& p, const std::string& generator, int cap)
{
    const auto w = working_model(p, cap);
    if (!w.model.find(generator))
        throw std::invalid_argument("unknown class '" + generator + "'");
    const auto d = distortion_exponent(w.model, generator);
    Report r;
    r.doc = header("distortion");
    r.doc["source"] = source_of(p);
    r.doc["model"] = w.computed ? "minimal model" : "file";
    r.doc["class"] = d.generator;
    r.doc["degree"] = d.degree;
    r.doc["depth"] = d.depth;
    r.doc["exponent"] = d.exponent;
    r.doc["bound"] = "O(L^" + std::to_string(d.exponent) + ")";
    r.doc["sharpness"] = to_string(d.sharpness);
    r.doc["status"] = "ok";
    return r;
}

Report report_scalable(const std::string& descriptor)
{
    const auto c = classify(descriptor);
    Report r;
    r.doc = header("scalable");
    r.doc["result"] = classification_json(c);
    switch (c.verdict) {
    case Verdict::Scalable:
        r.doc["status"] = "ok";
        break;
    case Verdict::NotScalable:
        r.doc["status"] = "refuted";
        break;
    case Verdict::Unknown:
        r.doc["status"] = "unknown";
        break;
    }
    return r;
}

Report report_pair(const Presentation& p, const std::string& generator, const std::string& bracket,
                   const std::optional<Rational>& scale, int cap)
{
    const auto w = working_model(p, cap);
    if (!w.model.find(generator))
        throw std::invalid_argument("unknown class '" + generator + "'");
    const Bracket b = parse_bracket(bracket);
    const Rational value = whitehead_pair(w.model, generator, *b);
    Report r;
    r.doc = header("pair");
    r.doc["source"] = source_of(p);
    r.doc["model"] = w.computed ? "minimal model" : "file";
    r.doc["class"] = generator;
    r.doc["bracket"] = to_string(*b);
    r.doc["bracket_degree"] = bracket_degree(w.model, *b);
    r.doc["value"] = to_string(value);
    if (scale) {
        const Rational scaled = whitehead_pair(w.model, generator, *scale_by_degree(w.model, b, *scale));
        long sum = 0;
        leaf_degree_sum(w.model, *b, sum);
        json s;
        s["N"] = to_string(*scale);
        s["value"] = to_string(scaled);
        s["leaf_degree_sum"] = sum;
        s["law_holds"] = scaled == power(*scale, sum) * value;
        if (value != 0)
            s["factor"] = to_string(Rational(scaled / value));
        r.doc["scaled"] = s;
    }
    r.doc["status"] = "ok";
    return r;
}

Report report_verify(const VerifyOptions& options)
{
    const auto results = run_verification(options);
    Report r;
    r.doc = header("verify-paper");
    json crit = json::array();
    bool all = true;
    for (const auto& c : results) {
        json e;
        e["id"] = c.id;
        e["key"] = c.key;
        e["title"] = c.title;
        e["pass"] = c.pass;
        e["limit_seconds"] = c.limit;
        e["detail"] = c.detail;
        crit.push_back(e);
        r.timings[c.key] = c.seconds;
        all = all && c.pass;
    }
    r.doc["criteria"] = crit;
    r.doc["passed"] = std::count_if(results.begin(), results.end(), [](const auto& c) { return c.pass; });
    r.doc["total"] = results.size();
    r.doc["status"] = all ? "ok" : "fail";
    return r;
}

std::string render_machine(const Report& r)
{
    return r.doc.dump(2) + "\n";
}

namespace {

std::string str(const json& j)
{
    return j.is_string() ? j.get<std::string>() : j.dump();
}

void render_classification(std::ostringstream& out, const json& c, int indent)
{
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    out << pad << c["descriptor"].get<std::string>() << ": " << c["verdict"].get<std::string>() << "\n";
    const auto& cert = c["certificate"];
    out << pad << "  certificate (" << cert["kind"].get<std::string>() << "): " << cert["summary"].get<std::string>()
        << "\n";
    for (const auto& [k, v] : cert["fields"].items())
        out << pad << "    " << k << " = " << str(v) << "\n";
    if (c.contains("ranks"))
        out << pad << "  ranks " << c["ranks"].dump() << "\n";
    if (c.contains("rank_bound") && !c["rank_bound"]["pass"].get<bool>())
        out << pad << "  rank bound fails in degree " << c["rank_bound"]["failing_degree"].dump() << ": "
            << c["rank_bound"]["rank"].dump() << " > " << c["rank_bound"]["bound"].dump() << "\n";
    if (c.contains("witness")) {
        const auto& w = c["witness"];
        out << pad << "  witness into Lambda R^" << w["target_dimension"].dump()
            << (w["verified"].get<bool>() ? " (verified)" : " (not verified)") << "\n";
        if (w.contains("images"))
            for (const auto& [k, v] : w["images"].items())
                out << pad << "    " << k << " -> " << v.get<std::string>() << "\n";
        if (w.contains("notes"))
            for (const auto& n : w["notes"])
                out << pad << "    note: " << n.get<std::string>() << "\n";
    }
    if (c.contains("parts"))
        for (const auto& p : c["parts"])
            render_classification(out, p, indent + 2);
}

} // namespace

std::string render_text(const Report& r)
{
    const json& d = r.doc;
    std::ostringstream out;
    const std::string cmd = d.value("command", std::string());
    if (d.contains("source"))
        out << d["source"]["kind"].get<std::string>() << " " << d["source"]["name"].get<std::string>() << "\n";
    if (cmd == "cohomology") {
        for (const auto& e : d["degrees"]) {
            out << "H^" << e["degree"].dump() << " rank " << e["rank"].dump();
            const auto& reps = e["representatives"];
            for (std::size_t i = 0; i < reps.size(); ++i)
                out << (i == 0 ? "  [" : ", ") << reps[i].get<std::string>() << (i + 1 == reps.size() ? "]" : "");
            out << "\n";
        }
    } else if (cmd == "model") {
        out << (d["bigraded"].get<bool>() ? "bigraded" : "minimal") << " model through degree " << d["cap"].dump()
            << "\n";
        for (const auto& g : d["generators"]) {
            out << "  " << std::left << std::setw(12) << g["name"].get<std::string>() << " deg " << std::setw(3)
                << g["degree"].dump();
            if (g.contains("stage"))
                out << " W" << g["stage"].dump();
            out << " depth " << g["depth"].dump() << "  d = " << g["d"].get<std::string>() << "\n";
        }
        out << "dim V_k by depth:\n";
        for (const auto& row : d["filtration"])
            out << "  k=" << row["degree"].dump() << " " << row["by_depth"].dump() << "\n";
        out << "minimal: " << (d["minimal"].get<bool>() ? "yes" : "no");
        if (d.contains("quasi_isomorphism"))
            out << ", quasi-isomorphism through cap: " << (d["quasi_isomorphism"].get<bool>() ? "yes" : "no");
        out << "\n";
        for (const auto& w : d["warnings"])
            out << "warning: " << w.get<std::string>() << "\n";
    } else if (cmd == "distortion") {
        out << d["class"].get<std::string>() << " (degree " << d["degree"].dump() << ", depth " << d["depth"].dump()
            << "): distortion " << d["bound"].get<std::string>() << ", " << d["sharpness"].get<std::string>()
            << "\n";
    } else if (cmd == "scalable") {
        render_classification(out, d["result"], 0);
    } else if (cmd == "pair") {
        out << "<" << d["class"].get<std::string>() << ", " << d["bracket"].get<std::string>()
            << "> = " << d["value"].get<std::string>() << "\n";
        if (d.contains("scaled")) {
            const auto& s = d["scaled"];
            out << "scaled by N=" << s["N"].get<std::string>() << ": " << s["value"].get<std::string>();
            if (s.contains("factor"))
                out << " (factor " << s["factor"].get<std::string>() << ")";
            out << ", N^" << s["leaf_degree_sum"].dump() << " law "
                << (s["law_holds"].get<bool>() ? "holds" : "FAILS") << "\n";
        }
    } else if (cmd == "verify-paper") {
        for (const auto& c : d["criteria"]) {
            const std::string key = c["key"].get<std::string>();
            out << std::setw(2) << c["id"].dump() << " " << (c["pass"].get<bool>() ? "PASS" : "FAIL") << " "
                << std::left << std::setw(15) << key << std::right;
            if (auto it = r.timings.find(key); it != r.timings.end())
                out << " " << std::fixed << std::setprecision(3) << it->second << "s/" << std::setprecision(0)
                    << c["limit_seconds"].get<double>() << "s";
            out << "  " << c["detail"].get<std::string>() << "\n";
        }
        out << d["passed"].dump() << "/" << d["total"].dump() << " criteria passed\n";
    } else {
        out << d.dump(2) << "\n";
    }
    out << "status: " << r.status() << "\n";
    return out.str();
}

Report parse_report(const std::string& machine_text)
{
    Report r;
    try {
        r.doc = json::parse(machine_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("not a report: ") + e.what());
    }
    if (!r.doc.is_object() || r.doc.value("schema", std::string()) != report_schema)
        throw std::invalid_argument(std::string("report schema is not ") + report_schema);
    return r;
}

} // namespace rht
