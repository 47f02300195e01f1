#include "splinequant/reporting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>

namespace splinequant::reporting {

namespace {

const int kTableLevels[] = {16, 32, 64, 128};

std::string sign_glyph(double v) {
    if (v > 0.0) return "+";
    if (v < 0.0) return "-";
    return "0";
}

DesignConfig config_for(int levels, ModelKind model, double sigma = 1.0) {
    DesignConfig config;
    config.levels = levels;
    config.model = model;
    config.sigma = sigma;
    return config;
}

std::vector<std::string> report_cells(const DesignConfig& config,
                                      const DistortionReport& report) {
    return {std::to_string(config.levels),
            model_kind_name(config.model),
            format_sig6(config.sigma),
            format_sig6(report.granular),
            format_sig6(report.overload_exact),
            format_sig6(report.overload_closed),
            format_sig6(report.total),
            format_sig6(report.sqnr_db)};
}

}  // namespace

const char* tool_version() { return "0.1.0"; }

std::string format_sig6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string to_csv(const Table& table) {
    std::string out;
    auto line = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += cells[i];
        }
        out += '\n';
    };
    line(table.header);
    for (const auto& row : table.rows) line(row);
    return out;
}

Table table1() {
    Table t;
    t.header = {"n", "x1", "x2", "c_x1", "c_x2", "m1", "m2"};
    for (const int n : kTableLevels) {
        const SegmentGrid grid = build_segment_grid(config_for(n, ModelKind::linear_spline));
        const LinearSplineCompressor spline(grid);
        t.rows.push_back({std::to_string(n), format_sig6(grid.knots[1]),
                          format_sig6(grid.knots[2]), format_sig6(grid.values[1]),
                          format_sig6(grid.values[2]), format_sig6(spline.slopes()[0]),
                          format_sig6(spline.slopes()[1])});
    }
    return t;
}

Table table2() {
    Table t;
    t.header = {"n", "x1", "x2"};
    for (const char* coeff : {"a1", "b1", "d1", "a2", "b2", "d2"}) {
        t.header.push_back(coeff);
        t.header.push_back(std::string(coeff) + "_mag");
        t.header.push_back(std::string(coeff) + "_sign");
    }
    for (const int n : kTableLevels) {
        const SegmentGrid grid = build_segment_grid(config_for(n, ModelKind::quadratic_spline));
        const QuadraticSplineCompressor spline(grid);
        std::vector<std::string> row = {std::to_string(n), format_sig6(grid.knots[1]),
                                        format_sig6(grid.knots[2])};
        for (const QuadPiece& p : spline.pieces()) {
            for (const double c : {p.a, p.b, p.d}) {
                row.push_back(format_sig6(c));
                row.push_back(format_sig6(std::abs(c)));
                row.push_back(sign_glyph(c));
            }
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table table3() {
    // Published reproduction-space reference values for the same level counts.
    const double published[] = {19.36, 25.33, 31.08, 36.82};
    Table t;
    t.header = {"n", "sqnr_rs_published", "sqnr_linear_spline", "sqnr_quadratic_spline",
                "sqnr_optimal"};
    for (std::size_t i = 0; i < 4; ++i) {
        const int n = kTableLevels[i];
        std::vector<std::string> row = {std::to_string(n), format_sig6(published[i])};
        for (const ModelKind kind :
             {ModelKind::linear_spline, ModelKind::quadratic_spline, ModelKind::optimal}) {
            row.push_back(format_sig6(evaluate_design(config_for(n, kind)).sqnr_db));
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table figure1(int samples) {
    if (samples < 2) throw config_error("figure needs at least 2 samples");
    const DesignConfig base = config_for(128, ModelKind::optimal);
    const double xmax = support_threshold(base.levels, base.sigma);
    const OptimalCompressor optimal(xmax, base.sigma);
    const SegmentGrid grid = build_segment_grid(base);
    const LinearSplineCompressor linear(grid);
    const QuadraticSplineCompressor quadratic(grid);

    Table t;
    t.header = {"x", "optimal", "linear_spline", "quadratic_spline"};
    for (int j = 0; j < samples; ++j) {
        // The last grid point is pinned to x_max so rounding cannot push the
        // spline evaluations out of the support.
        const double x = j == samples - 1 ? xmax : j * xmax / (samples - 1);
        t.rows.push_back({format_sig6(x), format_sig6(optimal.evaluate(x)),
                          format_sig6(linear.evaluate(x)), format_sig6(quadratic.evaluate(x))});
    }
    return t;
}

Table figure2() {
    Table t;
    t.header = {"bits", "sqnr_linear_spline", "sqnr_quadratic_spline", "sqnr_optimal"};
    for (const int n : kTableLevels) {
        const int bits = static_cast<int>(std::lround(std::log2(n)));
        std::vector<std::string> row = {std::to_string(bits)};
        for (const ModelKind kind :
             {ModelKind::linear_spline, ModelKind::quadratic_spline, ModelKind::optimal}) {
            row.push_back(format_sig6(evaluate_design(config_for(n, kind)).sqnr_db));
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

SweepOutcome sweep(const std::vector<int>& levels_list, const std::vector<ModelKind>& models,
                   double sigma) {
    if (levels_list.empty()) throw config_error("sweep needs at least one level count");
    if (models.empty()) throw config_error("sweep needs at least one model");
    for (const int n : levels_list) config_for(n, models.front(), sigma).validate();

    std::vector<int> levels = levels_list;
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    std::vector<ModelKind> kinds = models;
    std::sort(kinds.begin(), kinds.end());
    kinds.erase(std::unique(kinds.begin(), kinds.end()), kinds.end());

    SweepOutcome outcome;
    outcome.table.header = {"n", "model", "sigma", "granular", "overload_exact",
                            "overload_closed", "total", "sqnr_db", "status"};
    for (const int n : levels) {
        for (const ModelKind kind : kinds) {
            const DesignConfig config = config_for(n, kind, sigma);
            std::vector<std::string> row;
            try {
                row = report_cells(config, evaluate_design(config));
                row.push_back("ok");
            } catch (const error&) {
                row = {std::to_string(n), model_kind_name(kind), format_sig6(sigma),
                       "", "", "", "", "", "failed"};
                ++outcome.failed_cells;
            }
            outcome.table.rows.push_back(std::move(row));
        }
    }
    return outcome;
}

ordered_json config_json(const DesignConfig& config) {
    return {{"levels", config.levels},
            {"segments", config.segments},
            {"sigma", config.sigma},
            {"model", model_kind_name(config.model)}};
}

ordered_json model_json(const Compressor& model) {
    ordered_json j{{"kind", std::string(model.kind())},
                   {"sigma", model.sigma()},
                   {"x_max", model.x_max()}};
    if (const auto* linear = dynamic_cast<const LinearSplineCompressor*>(&model)) {
        j["knots"] = linear->grid().knots;
        j["values"] = linear->grid().values;
        j["slopes"] = linear->slopes();
    } else if (const auto* quad = dynamic_cast<const QuadraticSplineCompressor*>(&model)) {
        j["knots"] = quad->grid().knots;
        j["values"] = quad->grid().values;
        ordered_json pieces = ordered_json::array();
        for (const QuadPiece& p : quad->pieces())
            pieces.push_back({{"a", p.a}, {"b", p.b}, {"d", p.d}});
        j["pieces"] = std::move(pieces);
    }
    return j;
}

ordered_json codebook_json(const Codebook& codebook) {
    return {{"step", codebook.step},
            {"levels", codebook.inner_levels},
            {"edges", codebook.cell_edges},
            {"y_max", codebook.y_max},
            {"counts", codebook.per_segment_counts},
            {"shares", codebook.exact_shares},
            {"cell_lengths", codebook.cell_lengths},
            {"x_max", codebook.x_max}};
}

ordered_json report_json(const DistortionReport& report) {
    return {{"granular", report.granular},
            {"overload_exact", report.overload_exact},
            {"overload_closed", report.overload_closed},
            {"total", report.total},
            {"sqnr_db", report.sqnr_db}};
}

ordered_json mc_json(const MonteCarloReport& report) {
    ordered_json j{{"samples", report.samples},
                   {"seed", report.seed},
                   {"shards", report.shards},
                   {"generator", report.generator},
                   {"mse", report.mse}};
    if (std::isinf(report.empirical_sqnr_db))
        j["empirical_sqnr_db"] = "inf";
    else
        j["empirical_sqnr_db"] = report.empirical_sqnr_db;
    j["std_error_db"] = report.std_error_db;
    return j;
}

ordered_json design_document(const DesignConfig& config, const Compressor& model,
                             const Codebook& codebook, const DistortionReport& report) {
    return {{"config", config_json(config)},
            {"report", report_json(report)},
            {"model", model_json(model)},
            {"codebook", codebook_json(codebook)}};
}

Table design_table(const DesignConfig& config, const DistortionReport& report) {
    Table t;
    t.header = {"n", "model", "sigma", "granular", "overload_exact", "overload_closed",
                "total", "sqnr_db"};
    t.rows.push_back(report_cells(config, report));
    return t;
}

ordered_json manifest(const std::string& command, const ordered_json& config,
                      const std::vector<std::string>& outputs) {
    char stamp[32];
    const std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return {{"command", command},
            {"config", config},
            {"tool_version", tool_version()},
            {"timestamp", stamp},
            {"outputs", outputs}};
}

}  // namespace splinequant::reporting
