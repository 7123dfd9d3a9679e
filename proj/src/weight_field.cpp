#include "lpp/weight_field.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "lpp/error.hpp"
#include "lpp/io.hpp"

namespace lpp {

namespace {

constexpr char kMagic[8] = {'L', 'P', 'P', 'F', 'I', 'E', 'L', 'D'};
constexpr std::uint32_t kVersion = 1;

void put_u64(std::string& s, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
void put_u32(std::string& s, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

class Reader {
public:
    explicit Reader(std::string_view b) : b_(b) {}
    std::uint64_t offset() const { return pos_; }
    void need(std::size_t n, const char* what) {
        if (b_.size() - pos_ < n) throw FormatError(std::string("truncated field file: missing ") + what, pos_);
    }
    std::uint64_t u64(const char* what) {
        need(8, what);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= std::uint64_t(static_cast<unsigned char>(b_[pos_ + i])) << (8 * i);
        pos_ += 8;
        return v;
    }
    std::uint32_t u32(const char* what) {
        need(4, what);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= std::uint32_t(static_cast<unsigned char>(b_[pos_ + i])) << (8 * i);
        pos_ += 4;
        return v;
    }
    std::string_view bytes(std::size_t n, const char* what) {
        need(n, what);
        auto v = b_.substr(pos_, n);
        pos_ += n;
        return v;
    }
    bool done() const { return pos_ == b_.size(); }

private:
    std::string_view b_;
    std::size_t pos_ = 0;
};

}  // namespace

WeightField::WeightField(const LatticeWindow& window, std::vector<double> values, std::uint64_t seed,
                         std::string rng_id)
    : window_(window), values_(std::move(values)), seed_(seed), rng_id_(std::move(rng_id)) {
    validate(window_);
    if (values_.size() != window_.size()) throw DomainError("weight field: value count does not match window");
    for (double v : values_)
        if (!(v > 0.0)) throw DomainError("weight field: weights must be strictly positive");
}

std::uint64_t WeightField::id() const {
    std::uint64_t h = mix64(seed_);
    for (unsigned char c : rng_id_) h = mix64(h ^ c);
    return h;
}

double WeightField::weight(Site s) const {
    if (!window_.contains(s)) throw DomainError("site " + to_string(s) + " outside weight field window");
    return values_[window_.index(s)];
}

WeightField sample_weight_field(const LatticeWindow& window, std::uint64_t seed) {
    validate(window);
    return materialize(Environment(seed), window);
}

WeightField materialize(const Environment& env, const LatticeWindow& window) {
    validate(window);
    std::vector<double> v(window.size());
    const auto w = static_cast<std::size_t>(window.width());
#pragma omp parallel for schedule(static)
    for (std::int64_t y = window.y_min; y <= window.y_max; ++y) {
        std::size_t row = static_cast<std::size_t>(y - window.y_min) * w;
        for (std::int64_t x = window.x_min; x <= window.x_max; ++x)
            v[row + static_cast<std::size_t>(x - window.x_min)] = env.weight({x, y});
    }
    return WeightField(window, std::move(v), env.seed());
}

std::string encode_field(const WeightField& f) {
    std::string s(kMagic, kMagic + 8);
    put_u32(s, kVersion);
    const auto& w = f.window();
    put_u64(s, static_cast<std::uint64_t>(w.x_min));
    put_u64(s, static_cast<std::uint64_t>(w.x_max));
    put_u64(s, static_cast<std::uint64_t>(w.y_min));
    put_u64(s, static_cast<std::uint64_t>(w.y_max));
    put_u64(s, f.seed());
    put_u32(s, static_cast<std::uint32_t>(f.rng_id().size()));
    s += f.rng_id();
    s.reserve(s.size() + 8 * f.values().size());
    for (double v : f.values()) put_u64(s, std::bit_cast<std::uint64_t>(v));
    return s;
}

WeightField decode_field(std::string_view bytes) {
    Reader r(bytes);
    if (bytes.empty()) throw FormatError("empty field file", 0);
    auto magic = r.bytes(8, "magic");
    if (std::memcmp(magic.data(), kMagic, 8) != 0) throw FormatError("bad magic", 0);
    auto ver_off = r.offset();
    if (r.u32("version") != kVersion) throw FormatError("unsupported version", ver_off);
    auto win_off = r.offset();
    LatticeWindow w;
    w.x_min = static_cast<std::int64_t>(r.u64("window"));
    w.x_max = static_cast<std::int64_t>(r.u64("window"));
    w.y_min = static_cast<std::int64_t>(r.u64("window"));
    w.y_max = static_cast<std::int64_t>(r.u64("window"));
    if (!w.valid() || w.width() > (1LL << 31) || w.height() > (1LL << 31))
        throw FormatError("invalid window in header", win_off);
    std::uint64_t seed = r.u64("seed");
    std::uint32_t len = r.u32("rng_id length");
    if (len > 4096) throw FormatError("rng_id too long", r.offset() - 4);
    std::string rng_id(r.bytes(len, "rng_id"));
    std::vector<double> values(w.size());
    for (auto& v : values) {
        auto off = r.offset();
        v = std::bit_cast<double>(r.u64("weights"));
        if (!(v > 0.0)) throw FormatError("nonpositive weight", off);
    }
    if (!r.done()) throw FormatError("trailing bytes after weights", r.offset());
    return WeightField(w, std::move(values), seed, std::move(rng_id));
}

void save_field(const WeightField& field, const std::filesystem::path& path) {
    write_file_atomic(path, encode_field(field));
}

WeightField load_field(const std::filesystem::path& path) { return decode_field(read_file(path)); }

void export_tsv(const WeightField& field, const std::filesystem::path& path) {
    std::string s = "x\ty\tweight\n";
    const auto& w = field.window();
    for (std::int64_t y = w.y_min; y <= w.y_max; ++y)
        for (std::int64_t x = w.x_min; x <= w.x_max; ++x)
            s += std::to_string(x) + '\t' + std::to_string(y) + '\t' + format_double(field[{x, y}]) + '\n';
    write_file_atomic(path, s);
}

}  // namespace lpp
