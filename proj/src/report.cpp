#include <avlab/report.hpp>
#include <avlab/version.hpp>

#include <json.hpp>

#include <charconv>
#include <ctime>
#include <stdexcept>

namespace avlab {

namespace {

using ordered_json = nlohmann::ordered_json;

void append_config_lines(std::string& out, const EvalConfig& e, const FinderConfig& f) {
    out += "# eval.em_cutoff_factor=" + format_sig(e.em_cutoff_factor) + "\n";
    out += "# eval.bernoulli_terms=" + std::to_string(e.bernoulli_terms) + "\n";
    out += "# eval.target_abs_err=" + format_sig(e.target_abs_err) + "\n";
    out += "# finder.newton_tol=" + format_sig(f.newton_tol) + "\n";
    out += "# finder.max_subdivision_depth=" + std::to_string(f.max_subdivision_depth) + "\n";
    out += "# finder.edge_clearance=" + format_sig(f.edge_clearance) + "\n";
    out += "# finder.quadrature_nodes_per_unit=" + std::to_string(f.quadrature_nodes_per_unit) + "\n";
}

ordered_json manifest_json(const RunManifest& m) {
    ordered_json jm;
    jm["subcommand"] = m.subcommand;
    ordered_json jp = ordered_json::object();
    for (const auto& [k, v] : m.parameters) jp[k] = v;
    jm["parameters"] = std::move(jp);
    jm["eval"] = {{"em_cutoff_factor", m.eval.em_cutoff_factor},
                  {"bernoulli_terms", m.eval.bernoulli_terms},
                  {"target_abs_err", m.eval.target_abs_err}};
    jm["finder"] = {{"newton_tol", m.finder.newton_tol},
                    {"max_subdivision_depth", m.finder.max_subdivision_depth},
                    {"edge_clearance", m.finder.edge_clearance},
                    {"quadrature_nodes_per_unit", m.finder.quadrature_nodes_per_unit}};
    jm["version"] = m.version;
    jm["timestamp"] = m.timestamp;
    return jm;
}

} // namespace

RunManifest make_manifest(std::string subcommand,
                          std::vector<std::pair<std::string, std::string>> parameters,
                          const EvalConfig& eval, const FinderConfig& finder) {
    RunManifest m;
    m.subcommand = std::move(subcommand);
    m.parameters = std::move(parameters);
    m.eval = eval;
    m.finder = finder;
    m.version = version_string;
    m.timestamp = iso8601_utc_now();
    return m;
}

std::size_t Table::slots_per_row() const {
    std::size_t n = 0;
    for (const auto& c : columns) n += c.is_complex ? 2 : 1;
    return n;
}

std::string format_sig(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string iso8601_utc_now() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string to_csv(const RunManifest& m, const Table& t) {
    const std::size_t slots = t.slots_per_row();
    std::string out;
    out += "# subcommand=" + m.subcommand + "\n";
    for (const auto& [k, v] : m.parameters) out += "# " + k + "=" + v + "\n";
    append_config_lines(out, m.eval, m.finder);
    out += "# version=" + m.version + "\n";
    out += "# timestamp=" + m.timestamp + "\n";

    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        if (i) out += ',';
        if (t.columns[i].is_complex)
            out += "re_" + t.columns[i].name + ",im_" + t.columns[i].name;
        else
            out += t.columns[i].name;
    }
    out += '\n';

    for (const auto& row : t.rows) {
        if (row.size() != slots)
            throw std::logic_error("table row width does not match the column list");
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_sig(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const RunManifest& m, const Table& t) {
    const std::size_t slots = t.slots_per_row();
    ordered_json root;
    root["manifest"] = manifest_json(m);
    ordered_json rows = ordered_json::array();
    for (const auto& row : t.rows) {
        if (row.size() != slots)
            throw std::logic_error("table row width does not match the column list");
        ordered_json jr = ordered_json::object();
        std::size_t k = 0;
        for (const auto& c : t.columns) {
            if (c.is_complex) {
                jr[c.name] = {{"re", row[k]}, {"im", row[k + 1]}};
                k += 2;
            } else {
                jr[c.name] = row[k];
                k += 1;
            }
        }
        rows.push_back(std::move(jr));
    }
    root["rows"] = std::move(rows);
    return root.dump(2) + "\n";
}

} // namespace avlab
