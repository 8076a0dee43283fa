#include "alg/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace alg::io {

std::string format_double(double x)
{
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json number(double x)
{
    if (std::isfinite(x)) return x;
    return format_double(x);
}

std::string sha256_hex(const std::string& bytes)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 15];
    }
    return out;
}

json spectrum_to_json(const FiberSpectrum& spec)
{
    json ev = json::array();
    for (const auto& e : spec.eigenvalues) ev.push_back(json::array({e.mu, e.multiplicity}));
    return {{"eigenvalues", ev},
            {"volume", spec.volume},
            {"poincare_constant", number(spec.poincare_constant)},
            {"b1_zero", spec.b1_zero}};
}

namespace {

double read_number(const json& j)
{
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return INFINITY;
        if (s == "-inf") return -INFINITY;
        if (s == "nan") return NAN;
    }
    throw std::invalid_argument("expected a number");
}

} // namespace

FiberSpectrum spectrum_from_json(const json& j)
{
    FiberSpectrum spec;
    for (const auto& e : j.at("eigenvalues")) {
        if (!e.is_array() || e.size() != 2) throw std::invalid_argument("spectrum: eigenvalue entries are [mu, mult]");
        spec.eigenvalues.push_back({read_number(e[0]), e[1].get<int>()});
    }
    spec.volume = read_number(j.at("volume"));
    spec.poincare_constant = read_number(j.at("poincare_constant"));
    spec.b1_zero = j.at("b1_zero").get<bool>();
    if (const auto problems = validate(spec); !problems.empty())
        throw std::invalid_argument("spectrum: " + problems.front());
    return spec;
}

std::string spectrum_hash(const FiberSpectrum& spec) { return sha256_hex(spectrum_to_json(spec).dump()); }

json field_to_json(const SpectralField& field)
{
    const auto& basis = field.basis();
    if (!basis) throw std::invalid_argument("field serialization: needs a flat-torus basis");
    const auto& g = *field.grid();
    json modes = json::array();
    for (const auto& [m, v] : field.modes()) {
        json re = json::array(), im = json::array();
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            re.push_back(v(i).real());
            im.push_back(v(i).imag());
        }
        modes.push_back({{"k", m.k}, {"ordinal", m.mu_ordinal}, {"mu", m.mu}, {"re", re}, {"im", im}});
    }
    return {{"grid", {{"nodes", g.nodes()}, {"fd_order", g.fd_order()}}},
            {"basis", {{"side_lengths", basis->side_lengths()}, {"cutoff", basis->spectrum().eigenvalues.back().mu}}},
            {"spectrum_hash", spectrum_hash(field.spectrum())},
            {"modes", modes}};
}

SpectralField field_from_json(const json& j)
{
    auto grid = std::make_shared<const RadialGrid>(j.at("grid").at("nodes").get<std::vector<double>>(),
                                                   j.at("grid").at("fd_order").get<int>());
    const auto& b = j.at("basis");
    const double cutoff = b.at("cutoff").get<double>();
    auto basis = std::make_shared<const FlatTorusBasis>(b.at("side_lengths").get<std::vector<double>>(),
                                                        cutoff > 0 ? cutoff : 1e-300);
    if (spectrum_hash(basis->spectrum()) != j.at("spectrum_hash").get<std::string>())
        throw std::invalid_argument("field: spectrum hash mismatch");
    SpectralField field(basis, grid);
    for (const auto& m : j.at("modes")) {
        const auto re = m.at("re").get<std::vector<double>>();
        const auto im = m.at("im").get<std::vector<double>>();
        if (re.size() != im.size()) throw std::invalid_argument("field: re/im length mismatch");
        VectorXcd v(re.size());
        for (std::size_t i = 0; i < re.size(); ++i) v(i) = cplx(re[i], im[i]);
        field.set(basis->mode(m.at("k").get<int>(), m.at("ordinal").get<int>()), std::move(v));
    }
    return field;
}

Csv::Csv(std::vector<std::string> header) : columns_(header.size()) { row(header); }

Csv& Csv::row(const std::vector<std::string>& cells)
{
    if (cells.size() != columns_) throw std::invalid_argument("csv: wrong number of cells");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) text_ += ',';
        text_ += cells[i];
    }
    text_ += '\n';
    return *this;
}

Manifest::Manifest(std::filesystem::path dir, std::string command) : dir_(std::move(dir)), command_(std::move(command))
{
    std::filesystem::create_directories(dir_);
}

void Manifest::write(const std::string& name, const std::string& content)
{
    const auto path = dir_ / name;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) throw std::runtime_error("cannot write " + path.string());
    entries_.emplace_back(name, sha256_hex(content));
    sizes_.push_back(content.size());
}

void Manifest::record(const std::string& name, const std::string& content)
{
    entries_.emplace_back(name, sha256_hex(content));
    sizes_.push_back(content.size());
}

std::string Manifest::finish(const json& config, bool passed)
{
    std::vector<std::size_t> order(entries_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return entries_[a].first < entries_[b].first; });
    json artifacts = json::array();
    for (auto i : order)
        artifacts.push_back({{"path", entries_[i].first}, {"sha256", entries_[i].second}, {"bytes", sizes_[i]}});
    const json doc = {{"schema_version", schema_version},
                      {"command", command_},
                      {"config", config},
                      {"passed", passed},
                      {"artifacts", artifacts}};
    const std::string text = doc.dump(2) + "\n";
    std::ofstream out(dir_ / "manifest.json", std::ios::binary);
    out << text;
    return text;
}

} // namespace alg::io
