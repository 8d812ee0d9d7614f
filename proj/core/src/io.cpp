#include "zxi/io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "zxi/errors.hpp"

namespace zxi {

namespace {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

double to_little(double v) {
    if constexpr (std::endian::native == std::endian::little) {
        return v;
    } else {
        std::uint64_t u;
        std::memcpy(&u, &v, sizeof u);
        u = __builtin_bswap64(u);
        std::memcpy(&v, &u, sizeof v);
        return v;
    }
}

}  // namespace

void write_atomic(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw InvalidArgument("cannot open '" + tmp.string() + "' for writing");
        body(os);
        os.flush();
        if (!os) throw InvalidArgument("write to '" + tmp.string() + "' failed");
    }
    std::filesystem::rename(tmp, path);
}

std::filesystem::path sidecar_path(const std::filesystem::path& path) {
    std::filesystem::path p = path;
    p += ".json";
    return p;
}

void write_waveform(const std::filesystem::path& path, const Waveform& w) {
    w.validate();
    write_atomic(path, [&](std::ostream& os) {
        for (double v : w.samples) {
            const double le = to_little(v);
            os.write(reinterpret_cast<const char*>(&le), sizeof le);
        }
    });
    nlohmann::json meta{{"dt", w.dt}, {"label", w.label}, {"count", w.samples.size()}};
    write_atomic(sidecar_path(path), [&](std::ostream& os) { os << meta.dump(2) << '\n'; });
}

std::vector<double> read_f64(std::istream& in) {
    std::vector<double> out;
    double v;
    while (in.read(reinterpret_cast<char*>(&v), sizeof v)) out.push_back(to_little(v));
    if (in.gcount() != 0) throw InvalidArgument("trailing bytes do not form a whole float64 sample");
    return out;
}

Waveform read_waveform(const std::filesystem::path& path) {
    std::ifstream meta_in(sidecar_path(path));
    if (!meta_in) throw InvalidArgument("missing sidecar header '" + sidecar_path(path).string() + "'");
    nlohmann::json meta;
    try {
        meta_in >> meta;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument("malformed sidecar header: " + std::string(e.what()));
    }
    for (const auto& [key, value] : meta.items()) {
        if (key != "dt" && key != "label" && key != "count") throw InvalidArgument("unknown sidecar key '" + key + "'");
    }
    if (!meta.contains("dt") || !meta.contains("count")) throw InvalidArgument("sidecar header needs dt and count");

    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidArgument("cannot open waveform '" + path.string() + "'");
    std::vector<double> samples = read_f64(in);
    const auto count = meta.at("count").get<std::size_t>();
    if (samples.size() != count) throw InvalidArgument("sample count does not match the sidecar header");
    Waveform w(std::move(samples), meta.at("dt").get<double>(), meta.value("label", std::string{}));
    w.validate();
    return w;
}

std::string format_g9(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

void write_waveform_csv(std::ostream& os, const Waveform& w) {
    os << "t,value\n";
    for (std::size_t i = 0; i < w.size(); ++i) os << format_g9(w.time(i)) << ',' << format_g9(w.samples[i]) << '\n';
}

void write_crossings_csv(std::ostream& os, const CrossingSet& cs) {
    os << "t,psi,slope\n";
    for (const auto& e : cs.events)
        os << format_g9(e.t) << ',' << static_cast<int>(e.psi) << ',' << format_g9(e.slope) << '\n';
}

void write_interferogram_csv(std::ostream& os, const Interferogram& g) {
    os << "tau,value,stderr\n";
    for (std::size_t i = 0; i < g.size(); ++i)
        os << format_g9(g.tau(i)) << ',' << format_g9(g.values[i]) << ',' << format_g9(g.std_error[i]) << '\n';
}

void write_complex_csv(std::ostream& os, const ComplexCrosslation& cc) {
    os << "tau,A,C,envelope\n";
    for (std::size_t i = 0; i < cc.A.size(); ++i)
        os << format_g9(cc.A.tau(i)) << ',' << format_g9(cc.A.values[i]) << ',' << format_g9(cc.C.values[i]) << ','
           << format_g9(cc.envelope[i]) << '\n';
}

void write_nyquist_csv(std::ostream& os, const ComplexCrosslation& cc) {
    os << "A,C\n";
    for (const auto& p : cc.nyquist()) os << format_g9(p.A) << ',' << format_g9(p.C) << '\n';
}

void write_table_csv(std::ostream& os, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows) {
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << '\n';
    for (const auto& row : rows) {
        if (row.size() != header.size()) throw InvalidArgument("table row length differs from header");
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_g9(row[i]);
        os << '\n';
    }
}

}  // namespace zxi
