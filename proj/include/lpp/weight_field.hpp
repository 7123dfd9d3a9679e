#pragma once

#include <concepts>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "lpp/lattice.hpp"
#include "lpp/rng.hpp"

namespace lpp {

// Anything that can report the weight at a site.
template <class W>
concept WeightSource = requires(const W& w, Site s) {
    { w.weight(s) } -> std::convertible_to<double>;
    { w.id() } -> std::convertible_to<std::uint64_t>;
};

// Materialized weights on a finite window.
class WeightField {
public:
    WeightField(const LatticeWindow& window, std::vector<double> values, std::uint64_t seed,
                std::string rng_id = std::string(kRngId));

    const LatticeWindow& window() const { return window_; }
    const std::vector<double>& values() const { return values_; }
    std::uint64_t seed() const { return seed_; }
    const std::string& rng_id() const { return rng_id_; }
    std::uint64_t id() const;

    double weight(Site s) const;  // throws DomainError outside the window
    double operator[](Site s) const { return values_[window_.index(s)]; }

    friend bool operator==(const WeightField&, const WeightField&) = default;

private:
    LatticeWindow window_;
    std::vector<double> values_;
    std::uint64_t seed_;
    std::string rng_id_;
};

inline bool covers(const Environment&, const LatticeWindow&) { return true; }
inline bool covers(const WeightField& f, const LatticeWindow& w) { return f.window().contains(w); }

WeightField sample_weight_field(const LatticeWindow& window, std::uint64_t seed);

// Materializes an environment over a window (seed metadata taken from the environment).
WeightField materialize(const Environment& env, const LatticeWindow& window);

std::string encode_field(const WeightField& field);
WeightField decode_field(std::string_view bytes);

void save_field(const WeightField& field, const std::filesystem::path& path);
WeightField load_field(const std::filesystem::path& path);

// Text export: one "x<TAB>y<TAB>weight" line per site.
void export_tsv(const WeightField& field, const std::filesystem::path& path);

}  // namespace lpp
