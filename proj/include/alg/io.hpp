#pragma once

#include "alg/fiber_spectrum.hpp"
#include "alg/spectral_field.hpp"

#include "json.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace alg::io {

using json = nlohmann::ordered_json;

// 17 significant digits; "inf", "-inf", "nan" for non-finite values.
std::string format_double(double x);
// Finite doubles as numbers, non-finite as the strings above.
json number(double x);

std::string sha256_hex(const std::string& bytes);

json spectrum_to_json(const FiberSpectrum& spec);
FiberSpectrum spectrum_from_json(const json& j);
// Hash of the canonical spectrum document.
std::string spectrum_hash(const FiberSpectrum& spec);

// Needs a flat-torus basis; the basis is stored by side lengths and eigenvalue cutoff.
json field_to_json(const SpectralField& field);
SpectralField field_from_json(const json& j);

class Csv
{
public:
    explicit Csv(std::vector<std::string> header);
    Csv& row(const std::vector<std::string>& cells);
    std::string str() const { return text_; }

private:
    std::size_t columns_;
    std::string text_;
};

// Writes files into one directory and records each with its content hash.
class Manifest
{
public:
    static constexpr int schema_version = 1;

    Manifest(std::filesystem::path dir, std::string command);

    const std::filesystem::path& dir() const { return dir_; }
    void write(const std::string& name, const std::string& content);
    void write_json(const std::string& name, const json& j) { write(name, j.dump(2) + "\n"); }
    // Lists a file written by someone else.
    void record(const std::string& name, const std::string& content);
    // Writes manifest.json (artifacts sorted by name) and returns its text.
    std::string finish(const json& config, bool passed);

private:
    std::filesystem::path dir_;
    std::string command_;
    std::vector<std::pair<std::string, std::string>> entries_; // name, sha256
    std::vector<std::size_t> sizes_;
};

} // namespace alg::io
