// fmech — text output: CSV serialization of trajectories and force schedules
// Numbers print with 17 significant digits so a round trip through text
// reproduces the exact double; together with fixed-step integration this
// makes CSV output byte-identical across runs of the same build.
#pragma once

#include <cstdio>
#include <fstream>
#include <string>

#include <fmech/expr.hpp>
#include <fmech/integrate.hpp>
#include <fmech/linalg.hpp>
#include <fmech/system.hpp>

namespace fmech {

/// Shortest text that parses back to the exact double (`%.17g`).
inline std::string format_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

namespace detail {

inline void append_block(std::string &out, const char *stem, int dim) {
    for (int k = 1; k <= dim; ++k) {
        out += ',';
        out += stem;
        out += std::to_string(k);
    }
}

inline void append_row_block(std::string &out, const Vec &values) {
    for (double v : values) {
        out += ',';
        out += format_number(v);
    }
}

} // namespace detail

/// Render a trajectory as CSV with header `t,x1..xm,v1..vm,p1..pm,f1..fm,H`.
/// The energy column is recomputed per row from the stored state.
inline std::string trajectory_csv(const LagrangianSystem &sys,
                                  const Trajectory &traj) {
    std::string out = "t";
    detail::append_block(out, "x", traj.dim);
    detail::append_block(out, "v", traj.dim);
    detail::append_block(out, "p", traj.dim);
    detail::append_block(out, "f", traj.dim);
    out += ",H\n";
    for (std::size_t r = 0; r < traj.samples(); ++r) {
        const Vec x = traj.x_row(r), v = traj.v_row(r), p = traj.p_row(r);
        out += format_number(traj.t[r]);
        detail::append_row_block(out, x);
        detail::append_row_block(out, v);
        detail::append_row_block(out, p);
        detail::append_row_block(out, traj.f_row(r));
        out += ',';
        out += format_number(dot(p, v) - eval(sys.L, sys.at(x, v)));
        out += '\n';
    }
    return out;
}

/// Render just the force columns of a trajectory: header `t,f1..fm`.
inline std::string force_csv(const Trajectory &traj) {
    std::string out = "t";
    detail::append_block(out, "f", traj.dim);
    out += '\n';
    for (std::size_t r = 0; r < traj.samples(); ++r) {
        out += format_number(traj.t[r]);
        detail::append_row_block(out, traj.f_row(r));
        out += '\n';
    }
    return out;
}

/// Write text to a file, creating it fresh; failures name the output field.
inline void write_text_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw config_error("output.path", "cannot open `" + path +
                                              "` for writing");
    out << text;
    out.flush();
    if (!out)
        throw config_error("output.path", "failed writing `" + path + "`");
}

} // namespace fmech
