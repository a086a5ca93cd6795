#pragma once

#include <string>
#include <vector>

namespace wka {

/// Dependency-free static line chart: fixed 800x600 viewBox, optional log
/// axes with decade ticks. Enough for growth tables, Schur traces, truncation
/// curves and decay fits; off by default in the CLI.
class LinePlot {
public:
    LinePlot(std::string title, std::string x_label, std::string y_label, bool log_x, bool log_y);

    void add_series(std::string name, std::vector<double> x, std::vector<double> y);

    std::string render() const;

private:
    std::string title_, x_label_, y_label_;
    bool log_x_, log_y_;
    struct Series {
        std::string name;
        std::vector<double> x, y;
    };
    std::vector<Series> series_;
};

}  // namespace wka
