#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "splinequant/distortion.hpp"

namespace splinequant::reporting {

using ordered_json = nlohmann::ordered_json;

const char* tool_version();

// %.6g rendering; parse-then-format is idempotent, so emitted CSV survives a
// read/write round trip byte for byte.
std::string format_sig6(double v);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

// Comma-separated, one header line, \n endings, trailing newline.
std::string to_csv(const Table& table);

// Segment geometry and first-degree slopes for N in {16, 32, 64, 128}.
Table table1();

// Second-degree coefficients for the same N, each as value/magnitude/sign.
Table table2();

// SQNR comparison: published reproduction-space reference column plus the
// three computed models.
Table table3();

// Compressor curves at N = 128 on an even grid of `samples` points.
Table figure1(int samples);

// SQNR versus bits-per-sample for N in {16, 32, 64, 128}.
Table figure2();

struct SweepOutcome {
    Table table;
    int failed_cells = 0;
};

// One row per (N, model), sorted by N then canonical model order. Cells that
// fail at runtime produce a row with blank metrics and status "failed".
SweepOutcome sweep(const std::vector<int>& levels_list, const std::vector<ModelKind>& models,
                   double sigma);

ordered_json model_json(const Compressor& model);
ordered_json codebook_json(const Codebook& codebook);
ordered_json report_json(const DistortionReport& report);
ordered_json mc_json(const MonteCarloReport& report);
ordered_json config_json(const DesignConfig& config);

// Full design document: {config, report, model, codebook}.
ordered_json design_document(const DesignConfig& config, const Compressor& model,
                             const Codebook& codebook, const DistortionReport& report);

// CSV twin of the design document's report row.
Table design_table(const DesignConfig& config, const DistortionReport& report);

// {command, config, tool_version, timestamp, outputs}.
ordered_json manifest(const std::string& command, const ordered_json& config,
                      const std::vector<std::string>& outputs);

}  // namespace splinequant::reporting
