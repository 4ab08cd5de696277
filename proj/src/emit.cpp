#include "tsqkd/emit.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "tsqkd/errors.hpp"

namespace tsqkd {
namespace {

std::string real(double v) { return fmt::format("{:.17g}", v); }

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

template <typename T>
T parse_field(const std::string& s, std::size_t line_no) {
    T v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw IoError(fmt::format("records CSV line {}: bad field '{}'", line_no, s));
    }
    return v;
}

const char* metric_name(ChartMetric m) {
    switch (m) {
        case ChartMetric::SuccessQubitPct: return "% of successful qubits per bit";
        case ChartMetric::BitDecodePct: return "% of bits decoded correctly";
        case ChartMetric::SurvivingQubitPct: return "% of surviving qubits";
    }
    return "";
}

double metric_value(const SummaryRow& r, ChartMetric m) {
    switch (m) {
        case ChartMetric::SuccessQubitPct: return r.mean_success_qubit_pct;
        case ChartMetric::BitDecodePct: return r.mean_bit_decode_pct;
        case ChartMetric::SurvivingQubitPct: return r.surviving_qubit_pct;
    }
    return 0.0;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

}  // namespace

std::string records_csv(const std::vector<RecordRow>& records) {
    std::string out = kRecordsHeader;
    out += '\n';
    for (const auto& r : records) {
        out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", r.trial, r.topology, r.burst_size, real(r.link_km),
                           r.bit_index, to_int(r.sent), r.decoded.ok() ? std::to_string(to_int(r.decoded.bit)) : "",
                           to_string(r.decoded.status), r.received_count, real(r.success_fraction));
    }
    return out;
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
    std::string out = kSummaryHeader;
    out += '\n';
    for (const auto& r : rows) {
        out += fmt::format("{},{},{},{},{},{},{},{}\n", r.topology, r.burst_size, real(r.link_km),
                           real(r.mean_success_qubit_pct), real(r.mean_bit_decode_pct), real(r.surviving_qubit_pct),
                           r.trials, r.seed);
    }
    return out;
}

std::vector<RecordRow> parse_records_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || split(line, ',') != split(kRecordsHeader, ',')) {
        throw IoError("records CSV: missing or unexpected header");
    }
    std::vector<RecordRow> out;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != 10) throw IoError(fmt::format("records CSV line {}: expected 10 fields", line_no));
        RecordRow r;
        r.trial = parse_field<int>(f[0], line_no);
        r.topology = f[1];
        r.burst_size = parse_field<int>(f[2], line_no);
        r.link_km = parse_field<double>(f[3], line_no);
        r.bit_index = parse_field<int>(f[4], line_no);
        r.sent = bit_from_int(parse_field<int>(f[5], line_no));
        if (f[7] == "ok") {
            r.decoded = {DecodeStatus::Ok, bit_from_int(parse_field<int>(f[6], line_no))};
        } else if (f[7] == "tie") {
            r.decoded = {DecodeStatus::Tie, Bit::Zero};
        } else if (f[7] == "erasure") {
            r.decoded = {DecodeStatus::Erasure, Bit::Zero};
        } else {
            throw IoError(fmt::format("records CSV line {}: unknown decode_status '{}'", line_no, f[7]));
        }
        r.received_count = parse_field<std::size_t>(f[8], line_no);
        r.success_fraction = parse_field<double>(f[9], line_no);
        out.push_back(std::move(r));
    }
    return out;
}

std::string summary_json(const ExperimentConfig& cfg, const std::vector<SummaryRow>& rows, const std::string& kind) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["kind"] = kind;
    j["config"] = ordered_json::parse(dump_config(cfg));
    ordered_json meta;
    meta["noise_order"] = noise_stack_order();
    meta["collective_rotation_mode"] = to_string(cfg.noise.cr.mode);
    meta["angle_policy"] = cfg.angles.fixed ? "fixed" : "per_photon";
    meta["noise_events"] = {{"links", cfg.noise.apply_on_links}, {"intermediate_nodes", cfg.noise.apply_at_nodes}};
    meta["attenuation"] = cfg.attenuation_single_pass ? "single_pass" : "per_pass";
    meta["bit_values"] = "uniform random per (trial, bit)";
    meta["phase_flip_mapping"] = "bit_phase_flip (Pauli Y)";
    meta["decode_failures"] = "tie and erasure count as incorrect";
    j["metadata"] = meta;
    j["rows"] = ordered_json::array();
    for (const auto& r : rows) {
        j["rows"].push_back({{"topology", r.topology},
                             {"burst_size", r.burst_size},
                             {"link_km", r.link_km},
                             {"mean_success_qubit_pct", r.mean_success_qubit_pct},
                             {"mean_bit_decode_pct", r.mean_bit_decode_pct},
                             {"surviving_qubit_pct", r.surviving_qubit_pct},
                             {"trials", r.trials},
                             {"seed", r.seed}});
    }
    return j.dump(2) + "\n";
}

std::string chart_svg(const std::vector<SummaryRow>& rows, ChartAxis x, ChartMetric y, const std::string& title) {
    // Series in first-appearance order.
    std::vector<std::pair<std::string, std::vector<std::pair<double, double>>>> series;
    for (const auto& r : rows) {
        const double yv = metric_value(r, y);
        if (!(yv >= 0.0 && yv <= 100.0)) {
            throw EmitError(fmt::format("chart value {} for {} is outside [0, 100]", yv, r.topology));
        }
        const double xv = x == ChartAxis::BurstSize ? static_cast<double>(r.burst_size) : r.link_km;
        auto it = std::find_if(series.begin(), series.end(), [&](const auto& s) { return s.first == r.topology; });
        if (it == series.end()) {
            series.push_back({r.topology, {}});
            it = std::prev(series.end());
        }
        it->second.emplace_back(xv, yv);
    }

    constexpr double kWidth = 720, kHeight = 440;
    constexpr double kLeft = 70, kRight = 170, kTop = 40, kBottom = 60;
    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    double x_min = 0.0, x_max = 1.0;
    bool first = true;
    for (const auto& [_, pts] : series) {
        for (const auto& [xv, __] : pts) {
            x_min = first ? xv : std::min(x_min, xv);
            x_max = first ? xv : std::max(x_max, xv);
            first = false;
        }
    }
    if (x_max <= x_min) x_max = x_min + 1.0;
    auto px = [&](double xv) { return kLeft + plot_w * (xv - x_min) / (x_max - x_min); };
    auto py = [&](double yv) { return kTop + plot_h * (1.0 - yv / 100.0); };

    static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

    std::string out = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\" "
        "font-family=\"sans-serif\" font-size=\"12\">\n",
        kWidth, kHeight);
    out += fmt::format("<rect width=\"{}\" height=\"{}\" fill=\"white\"/>\n", kWidth, kHeight);
    out += fmt::format("<text x=\"{}\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n",
                       kLeft + plot_w / 2, xml_escape(title));
    // Axes and y grid.
    out += fmt::format("<g class=\"axes\" stroke=\"black\"><line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\"/>"
                       "<line x1=\"{0}\" y1=\"{2}\" x2=\"{3}\" y2=\"{2}\"/></g>\n",
                       kLeft, kTop, kTop + plot_h, kLeft + plot_w);
    for (int tick = 0; tick <= 100; tick += 20) {
        out += fmt::format("<line x1=\"{0}\" y1=\"{1:.2f}\" x2=\"{2}\" y2=\"{1:.2f}\" stroke=\"#ddd\"/>"
                           "<text x=\"{3}\" y=\"{4:.2f}\" text-anchor=\"end\">{5}</text>\n",
                           kLeft, py(tick), kLeft + plot_w, kLeft - 6, py(tick) + 4, tick);
    }
    for (int i = 0; i <= 4; ++i) {
        const double xv = x_min + (x_max - x_min) * i / 4.0;
        out += fmt::format("<text x=\"{:.2f}\" y=\"{}\" text-anchor=\"middle\">{:g}</text>\n", px(xv),
                           kTop + plot_h + 18, std::round(xv * 100.0) / 100.0);
    }
    out += fmt::format("<text class=\"x-label\" x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
                       kLeft + plot_w / 2, kHeight - 16,
                       x == ChartAxis::BurstSize ? "multi-photon burst size" : "link length (km)");
    out += fmt::format("<text class=\"y-label\" transform=\"translate(18,{}) rotate(-90)\" text-anchor=\"middle\">{}</text>\n",
                       kTop + plot_h / 2, metric_name(y));

    for (std::size_t s = 0; s < series.size(); ++s) {
        const auto& [name, pts] = series[s];
        const char* color = kColors[s % std::size(kColors)];
        std::string points;
        for (const auto& [xv, yv] : pts) points += fmt::format("{}{:.2f},{:.2f}", points.empty() ? "" : " ", px(xv), py(yv));
        out += fmt::format("<polyline class=\"series\" data-series=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"2\" points=\"{}\"/>\n",
                           xml_escape(name), color, points);
        const double ly = kTop + 10 + 20.0 * static_cast<double>(s);
        out += fmt::format("<g class=\"legend\"><line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"{3}\" stroke-width=\"2\"/>"
                           "<text x=\"{4}\" y=\"{5}\">{6}</text></g>\n",
                           kLeft + plot_w + 15, ly, kLeft + plot_w + 40, color, kLeft + plot_w + 46, ly + 4,
                           xml_escape(name));
    }
    out += "</svg>\n";
    return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(fmt::format("cannot write '{}'", path.string()));
    out << text;
    if (!out) throw IoError(fmt::format("write to '{}' failed", path.string()));
}

void emit_csv(const std::vector<SummaryRow>& rows, const std::vector<RecordRow>& records,
              const std::filesystem::path& records_path, const std::filesystem::path& summary_path) {
    write_text_file(records_path, records_csv(records));
    write_text_file(summary_path, summary_csv(rows));
}

void emit_chart(const std::vector<SummaryRow>& rows, ChartAxis x, ChartMetric y, const std::string& title,
                const std::filesystem::path& path) {
    write_text_file(path, chart_svg(rows, x, y, title));
}

}  // namespace tsqkd
