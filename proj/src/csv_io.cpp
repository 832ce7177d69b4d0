#include "slsim/csv_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "slsim/errors.hpp"

namespace slsim {

namespace {

constexpr const char* kTrajectoryHeader =
    "iter,agent,role,belief_theta1,belief_theta2";
constexpr const char* kSummaryHeader = "iter,avg_belief_true_state";

// 17 significant digits round-trip any double exactly.
std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string line;
    std::stringstream ss(text);
    while (std::getline(ss, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

[[noreturn]] void fail_line(std::size_t line_no, const std::string& what) {
    throw IoError("CSV line " + std::to_string(line_no) + ": " + what);
}

double parse_double_field(const std::string& field, std::size_t line_no,
                          const std::string& name) {
    // strtod rather than stod: beliefs pass through the subnormal range,
    // where stod throws out_of_range instead of returning the value.
    if (field.empty()) fail_line(line_no, name + " is not a number");
    const char* begin = field.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end != begin + field.size()) {
        fail_line(line_no, name + " is not a number");
    }
    return v;
}

long parse_int_field(const std::string& field, std::size_t line_no,
                     const std::string& name) {
    try {
        std::size_t used = 0;
        const long v = std::stol(field, &used);
        if (used != field.size()) fail_line(line_no, name + " is not an integer");
        return v;
    } catch (const std::exception&) {
        fail_line(line_no, name + " is not an integer");
    }
}

}  // namespace

std::string format_trajectory_csv(const Trajectory& traj,
                                  const std::vector<Role>& roles) {
    std::string out = kTrajectoryHeader;
    out += '\n';
    for (std::size_t i = 0; i < traj.beliefs.size(); ++i) {
        for (std::size_t k = 0; k < traj.beliefs[i].size(); ++k) {
            out += std::to_string(i);
            out += ',';
            out += std::to_string(k);
            out += ',';
            out += role_name(roles[k]);
            out += ',';
            out += format_double(traj.beliefs[i][k][0]);
            out += ',';
            out += format_double(traj.beliefs[i][k][1]);
            out += '\n';
        }
    }
    return out;
}

std::string format_summary_csv(const std::vector<double>& mean_avg_belief) {
    std::string out = kSummaryHeader;
    out += '\n';
    for (std::size_t i = 0; i < mean_avg_belief.size(); ++i) {
        out += std::to_string(i);
        out += ',';
        out += format_double(mean_avg_belief[i]);
        out += '\n';
    }
    return out;
}

SummarySeries parse_summary_csv(const std::string& text) {
    const auto lines = split_lines(text);
    if (lines.empty() || lines[0] != kSummaryHeader) {
        fail_line(1, std::string("expected header '") + kSummaryHeader + "'");
    }
    SummarySeries series;
    for (std::size_t idx = 1; idx < lines.size(); ++idx) {
        if (lines[idx].empty()) continue;
        const auto fields = split_line(lines[idx]);
        const std::size_t line_no = idx + 1;
        if (fields.size() != 2) fail_line(line_no, "expected 2 fields");
        const long iter = parse_int_field(fields[0], line_no, "iter");
        if (iter != static_cast<long>(series.values.size())) {
            fail_line(line_no, "iterations must count up from 0");
        }
        const double v = parse_double_field(fields[1], line_no,
                                            "avg_belief_true_state");
        if (!(v >= 0.0) || !(v <= 1.0)) {
            fail_line(line_no, "belief outside [0, 1]");
        }
        series.values.push_back(v);
    }
    if (series.values.empty()) {
        throw IoError("CSV has a header but no data rows");
    }
    return series;
}

void validate_trajectory_csv(const std::string& text) {
    const auto lines = split_lines(text);
    if (lines.empty() || lines[0] != kTrajectoryHeader) {
        fail_line(1, std::string("expected header '") + kTrajectoryHeader + "'");
    }
    for (std::size_t idx = 1; idx < lines.size(); ++idx) {
        if (lines[idx].empty()) continue;
        const auto fields = split_line(lines[idx]);
        const std::size_t line_no = idx + 1;
        if (fields.size() != 5) fail_line(line_no, "expected 5 fields");
        parse_int_field(fields[0], line_no, "iter");
        parse_int_field(fields[1], line_no, "agent");
        if (fields[2] != "normal" && fields[2] != "malicious") {
            fail_line(line_no, "role must be 'normal' or 'malicious'");
        }
        const double b1 = parse_double_field(fields[3], line_no, "belief_theta1");
        const double b2 = parse_double_field(fields[4], line_no, "belief_theta2");
        if (!(b1 >= 0.0) || !(b1 <= 1.0) || !(b2 >= 0.0) || !(b2 <= 1.0)) {
            fail_line(line_no, "belief outside [0, 1]");
        }
    }
}

void write_text_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << body;
    if (!out) throw IoError("write failed for '" + path + "'");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace slsim
