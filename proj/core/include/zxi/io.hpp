#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "zxi/interferogram.hpp"
#include "zxi/waveform.hpp"
#include "zxi/zero_crossing.hpp"

namespace zxi {

// Writes via a temporary sibling then renames over path.
void write_atomic(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body);

// Raw little-endian float64 at path, JSON sidecar {dt, label, count} at path + ".json".
void write_waveform(const std::filesystem::path& path, const Waveform& w);
Waveform read_waveform(const std::filesystem::path& path);
std::filesystem::path sidecar_path(const std::filesystem::path& path);

// Little-endian float64 stream.
std::vector<double> read_f64(std::istream& in);

// CSV with 9 significant digits.
std::string format_g9(double v);
void write_waveform_csv(std::ostream& os, const Waveform& w);
void write_crossings_csv(std::ostream& os, const CrossingSet& cs);
void write_interferogram_csv(std::ostream& os, const Interferogram& g);
void write_complex_csv(std::ostream& os, const ComplexCrosslation& cc);
void write_nyquist_csv(std::ostream& os, const ComplexCrosslation& cc);

// Header row then rows of equal length.
void write_table_csv(std::ostream& os, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows);

}  // namespace zxi
