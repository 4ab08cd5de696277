#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "tsqkd/config.hpp"
#include "tsqkd/experiment.hpp"

namespace tsqkd {

// Column orders are part of the output contract.
inline constexpr const char* kRecordsHeader =
    "trial,topology,burst_size,link_km,bit_index,sent,decoded,decode_status,received_count,success_fraction";
inline constexpr const char* kSummaryHeader =
    "topology,burst_size,link_km,mean_success_qubit_pct,mean_bit_decode_pct,surviving_qubit_pct,trials,seed";

// `decoded` is empty when decode_status is not ok. Reals are written with
// 17 significant digits so they parse back exactly.
std::string records_csv(const std::vector<RecordRow>& records);
std::string summary_csv(const std::vector<SummaryRow>& rows);

// Inverse of records_csv. Throws IoError on malformed input.
std::vector<RecordRow> parse_records_csv(const std::string& text);

// Summary rows plus run metadata (config echo, noise order, policies).
std::string summary_json(const ExperimentConfig& cfg, const std::vector<SummaryRow>& rows, const std::string& kind);

enum class ChartAxis { BurstSize, LinkKm };
enum class ChartMetric { SuccessQubitPct, BitDecodePct, SurvivingQubitPct };

// Standalone SVG line chart, one polyline per topology. Throws EmitError
// if any plotted value falls outside [0, 100].
std::string chart_svg(const std::vector<SummaryRow>& rows, ChartAxis x, ChartMetric y, const std::string& title);

// Writes text to path, creating parent directories. Throws IoError.
void write_text_file(const std::filesystem::path& path, const std::string& text);

void emit_csv(const std::vector<SummaryRow>& rows, const std::vector<RecordRow>& records,
              const std::filesystem::path& records_path, const std::filesystem::path& summary_path);

void emit_chart(const std::vector<SummaryRow>& rows, ChartAxis x, ChartMetric y, const std::string& title,
                const std::filesystem::path& path);

}  // namespace tsqkd
