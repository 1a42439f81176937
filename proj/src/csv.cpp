#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "spinlab/errors.hpp"
#include "spinlab/experiment.hpp"

namespace spinlab {

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc()) throw Error("format_number: conversion failed");
    return std::string(buf.data(), ptr);
}

std::string format_trajectory_csv(const Trajectory& trajectory) {
    trajectory.validate();
    std::string out(kTrajectoryHeader);
    out += '\n';
    for (std::size_t k = 0; k < trajectory.times.size(); ++k) {
        const auto& s = trajectory.samples[k];
        out += format_number(trajectory.times[k]);
        for (double v : s.components()) {
            out += ',';
            out += format_number(v);
        }
        out += ',';
        out += format_number(s.norm);
        out += ',';
        out += format_number(s.concurrence.value_or(std::nan("")));
        out += '\n';
    }
    return out;
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

void write_trajectory_csv(const Trajectory& trajectory, const std::filesystem::path& path) {
    write_text_file(path, format_trajectory_csv(trajectory));
}

Trajectory parse_trajectory_csv(std::string_view text) {
    Trajectory traj;
    bool any_concurrence = false;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < text.size()) {
        const auto end = std::min(text.find('\n', start), text.size());
        const std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (line_no == 1) {
            if (line != kTrajectoryHeader) throw InvalidArgument("trajectory CSV: unexpected header");
            continue;
        }
        if (line.empty()) continue;

        std::array<double, 9> fields{};
        std::size_t pos = 0;
        for (std::size_t i = 0; i < fields.size(); ++i) {
            const auto comma = i + 1 < fields.size() ? line.find(',', pos) : line.size();
            if (comma == std::string_view::npos)
                throw InvalidArgument("trajectory CSV line " + std::to_string(line_no) + ": too few fields");
            const auto field = line.substr(pos, comma - pos);
            const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), fields[i]);
            if (ec != std::errc() || ptr != field.data() + field.size())
                throw InvalidArgument("trajectory CSV line " + std::to_string(line_no) + ": bad number '" +
                                      std::string(field) + "'");
            pos = comma + 1;
        }
        traj.times.push_back(fields[0]);
        Observables o{fields[1], fields[2], fields[3], fields[4], fields[5], fields[6], fields[7], std::nullopt};
        if (!std::isnan(fields[8])) {
            o.concurrence = fields[8];
            any_concurrence = true;
        }
        traj.samples.push_back(o);
    }
    if (line_no == 0) throw InvalidArgument("trajectory CSV: empty input");
    traj.engine = any_concurrence ? Engine::kQuantum : Engine::kClassical;
    traj.validate();
    return traj;
}

Trajectory read_trajectory_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_trajectory_csv(buffer.str());
}

}  // namespace spinlab
