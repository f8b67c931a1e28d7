#include "fintstab/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace fintstab {

std::string format_double(double x) {
    char buf[40];
    // shortest representation that parses back to the same double
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, x);
        double back = 0.0;
        std::sscanf(buf, "%lf", &back);
        if (back == x) break;
    }
    return buf;
}

std::string levels_csv(const LevelTable& table) {
    std::ostringstream out;
    out << "j,pi_j,gamma_j,lower,upper\n";
    for (long j = table.j_min(); j <= table.j_max(); ++j) {
        out << j << ',' << format_double(table.level(j)) << ',' << format_double(table.gamma(j))
            << ',' << format_double(table.lower(j)) << ',' << format_double(table.upper(j))
            << '\n';
    }
    return out.str();
}

std::string trajectory_csv(const Trajectory& traj) {
    std::ostringstream out;
    const std::size_t n = traj.initial_report.size();
    out << 't';
    for (std::size_t i = 1; i <= n; ++i) out << ",e" << i;
    out << ",norm_inf,norm_2,in_cts,alpha3,alpha4\n";
    for (const auto& s : traj.samples) {
        out << format_double(s.t);
        for (double x : s.state) out << ',' << format_double(x);
        out << ',' << format_double(s.norm_inf) << ',' << format_double(s.norm_2) << ','
            << (s.in_cts ? 1 : 0) << ',' << format_double(s.alpha3) << ','
            << format_double(s.alpha4) << '\n';
    }
    return out.str();
}

std::string certificate_csv(const Certificate& cert) {
    std::ostringstream out;
    out << "condition,satisfied,slack\n";
    for (const auto& c : cert.conditions) {
        out << c.name << ',' << (c.satisfied ? 1 : 0) << ',' << format_double(c.slack) << '\n';
    }
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << content;
    if (!out) throw IoError("write failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace fintstab
