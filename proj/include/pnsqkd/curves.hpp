#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace pnsqkd {

struct Grid {
    double min;
    double max;
    double step;

    // "min:max:step"; a single number gives a one-point grid
    static Grid parse(const std::string& text);
    std::vector<double> points() const;
};

// Unset fields fall back to the per-curve defaults listed by curve_catalog().
struct CurveOptions {
    std::optional<double> mu;
    std::optional<double> alpha;
    std::optional<double> eta_det;
    std::optional<double> p_d;
    std::optional<double> qber_opt;
    std::optional<double> eta;
    std::optional<double> distance_km;
    std::optional<Grid> nb;
    std::optional<Grid> gamma;
    std::optional<Grid> d;
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::map<std::string, std::string> meta;
};

struct CurveInfo {
    std::string id;
    std::string description;
    std::string columns;
    std::string defaults;
};

const std::vector<CurveInfo>& curve_catalog();

// Throws std::invalid_argument on bad options, InfeasibleModel when the attack cannot run.
Table run_curve(const std::string& id, const CurveOptions& opt);

Table geneva_lausanne_table();

// %.12g style: 12 significant digits, trailing zeros dropped
std::string format_number(double v);
void write_csv(std::ostream& os, const Table& t);
void write_json(std::ostream& os, const std::string& name, const Table& t);

// JSON summary of the acceptance criteria and invariants; returns true when all pass.
bool write_validation(std::ostream& os);

}  // namespace pnsqkd
