#include <rebuf/gen.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

namespace rebuf {

namespace {

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

double parse_double(std::string_view text, std::string_view context) {
    std::string s(text);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
        throw Error(ErrorKind::InvalidSpec, "bad number '" + s + "' in " + std::string(context));
    }
    return v;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

} // namespace

DistributionSpec DistributionSpec::parse(std::string_view text) {
    text = trim(text);
    const auto colon = text.find(':');
    const std::string_view name = trim(text.substr(0, colon));
    DistributionSpec spec;
    std::vector<std::string> allowed;
    if (name == "uniform") {
        spec.kind = DistributionKind::Uniform;
    } else if (name == "binomial") {
        spec.kind = DistributionKind::Binomial;
        allowed = {"p"};
    } else if (name == "negbinomial") {
        spec.kind = DistributionKind::NegBinomial;
        allowed = {"p", "r"};
    } else if (name == "geometric") {
        spec.kind = DistributionKind::Geometric;
        allowed = {"p"};
    } else if (name == "poisson") {
        spec.kind = DistributionKind::Poisson;
        allowed = {"m"};
    } else if (name == "zipf") {
        spec.kind = DistributionKind::Zipf;
        allowed = {"a"};
    } else {
        throw Error(ErrorKind::InvalidSpec, "unknown distribution '" + std::string(name) + "'");
    }

    std::vector<std::string> seen;
    if (colon != std::string_view::npos) {
        std::string_view rest = text.substr(colon + 1);
        while (!rest.empty()) {
            const auto comma = rest.find(',');
            const std::string_view item = trim(rest.substr(0, comma));
            rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
            const auto eq = item.find('=');
            if (eq == std::string_view::npos) {
                throw Error(ErrorKind::InvalidSpec, "expected key=value in '" + std::string(text) + "'");
            }
            const std::string key(trim(item.substr(0, eq)));
            if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
                throw Error(ErrorKind::InvalidSpec, "parameter '" + key + "' not valid for " + std::string(name));
            }
            const double v = parse_double(trim(item.substr(eq + 1)), text);
            if (key == "p") spec.p = v;
            if (key == "r") spec.r = v;
            if (key == "m") spec.m = v;
            if (key == "a") spec.a = v;
            seen.push_back(key);
        }
    }
    // Every parameter except the negative binomial's r must be given.
    for (const auto& key : allowed) {
        if (key != "r" && std::find(seen.begin(), seen.end(), key) == seen.end()) {
            throw Error(ErrorKind::InvalidSpec, "missing parameter '" + key + "' for " + std::string(name));
        }
    }
    spec.validate();
    return spec;
}

std::string DistributionSpec::kind_name() const {
    switch (kind) {
    case DistributionKind::Uniform: return "uniform";
    case DistributionKind::Binomial: return "binomial";
    case DistributionKind::NegBinomial: return "negbinomial";
    case DistributionKind::Geometric: return "geometric";
    case DistributionKind::Poisson: return "poisson";
    case DistributionKind::Zipf: return "zipf";
    }
    return "?";
}

std::string DistributionSpec::params_string() const {
    switch (kind) {
    case DistributionKind::Uniform: return "";
    case DistributionKind::Binomial:
    case DistributionKind::Geometric: return "p=" + format_number(p);
    case DistributionKind::NegBinomial: return "p=" + format_number(p) + ";r=" + format_number(r);
    case DistributionKind::Poisson: return "m=" + format_number(m);
    case DistributionKind::Zipf: return "a=" + format_number(a);
    }
    return "";
}

std::string DistributionSpec::to_string() const {
    std::string params = params_string();
    if (params.empty()) {
        return kind_name();
    }
    std::replace(params.begin(), params.end(), ';', ',');
    return kind_name() + ":" + params;
}

void DistributionSpec::validate() const {
    auto fail = [&](const std::string& why) { throw Error(ErrorKind::InvalidSpec, kind_name() + ": " + why); };
    switch (kind) {
    case DistributionKind::Uniform: break;
    case DistributionKind::Binomial:
    case DistributionKind::Geometric:
        if (!(p > 0.0 && p < 1.0)) fail("p must be in (0,1)");
        break;
    case DistributionKind::NegBinomial:
        if (!(p > 0.0 && p < 1.0)) fail("p must be in (0,1)");
        if (!(r >= 1.0)) fail("r must be at least 1");
        break;
    case DistributionKind::Poisson:
        if (!(m > 0.0)) fail("m must be positive");
        break;
    case DistributionKind::Zipf:
        if (!(a > 1.0)) fail("a must exceed 1");
        break;
    }
}

std::vector<DistributionSpec> benchmark_distributions() {
    return {
        DistributionSpec::uniform(),
        DistributionSpec::binomial(0.3),     DistributionSpec::binomial(0.5),     DistributionSpec::binomial(0.7),
        DistributionSpec::negbinomial(0.3),  DistributionSpec::negbinomial(0.5),  DistributionSpec::negbinomial(0.7),
        DistributionSpec::geometric(0.3),    DistributionSpec::geometric(0.5),    DistributionSpec::geometric(0.7),
        DistributionSpec::poisson(1),        DistributionSpec::poisson(2),        DistributionSpec::poisson(3),
        DistributionSpec::zipf(1.1),         DistributionSpec::zipf(1.5),         DistributionSpec::zipf(2),
    };
}

std::vector<double> color_pmf(const DistributionSpec& spec, std::size_t sigma) {
    spec.validate();
    if (sigma == 0) {
        throw Error(ErrorKind::InvalidSpec, "sigma must be at least 1");
    }
    std::vector<double> logw(sigma);
    for (std::size_t i = 0; i < sigma; ++i) {
        const double v0 = static_cast<double>(i);     // zero-based outcome
        const double v1 = static_cast<double>(i + 1); // one-based outcome
        switch (spec.kind) {
        case DistributionKind::Uniform: logw[i] = 0.0; break;
        case DistributionKind::Binomial: {
            const double trials = static_cast<double>(sigma - 1);
            logw[i] = std::lgamma(trials + 1) - std::lgamma(v0 + 1) - std::lgamma(trials - v0 + 1) +
                      v0 * std::log(spec.p) + (trials - v0) * std::log1p(-spec.p);
            break;
        }
        case DistributionKind::NegBinomial:
            logw[i] = std::lgamma(v0 + spec.r) - std::lgamma(spec.r) - std::lgamma(v0 + 1) +
                      spec.r * std::log(spec.p) + v0 * std::log1p(-spec.p);
            break;
        case DistributionKind::Geometric: logw[i] = (v1 - 1) * std::log1p(-spec.p) + std::log(spec.p); break;
        case DistributionKind::Poisson: logw[i] = v0 * std::log(spec.m) - spec.m - std::lgamma(v0 + 1); break;
        case DistributionKind::Zipf: logw[i] = -spec.a * std::log(v1); break;
        }
    }
    const double top = *std::max_element(logw.begin(), logw.end());
    std::vector<double> pmf(sigma);
    double total = 0.0;
    for (std::size_t i = 0; i < sigma; ++i) {
        pmf[i] = std::exp(logw[i] - top);
        total += pmf[i];
    }
    for (auto& w : pmf) {
        w /= total;
    }
    return pmf;
}

ColorSequence sample_sequence(const DistributionSpec& spec, std::size_t n, std::size_t sigma, std::uint64_t seed) {
    const std::vector<double> pmf = color_pmf(spec, sigma);
    std::vector<double> cdf(sigma);
    double acc = 0.0;
    for (std::size_t i = 0; i < sigma; ++i) {
        acc += pmf[i];
        cdf[i] = acc;
    }
    cdf.back() = 1.0;

    std::mt19937_64 rng(seed);
    ColorSequence out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53; // [0, 1)
        const auto idx = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
        out.emplace_back(static_cast<std::uint32_t>(std::min(idx, sigma - 1) + 1));
    }
    return out;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t mix_seed(std::initializer_list<std::uint64_t> parts) {
    std::uint64_t h = 0x243f6a8885a308d3ULL;
    for (auto v : parts) {
        h = splitmix64(h ^ splitmix64(v));
    }
    return h;
}

std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::size_t fraction_of(std::size_t n, double fraction) {
    const auto v = static_cast<long long>(std::llround(static_cast<double>(n) * fraction));
    return static_cast<std::size_t>(std::max(1LL, v));
}

std::vector<ExperimentCell> grid_expand(const DatasetGrid& grid) {
    std::vector<ExperimentCell> cells;
    for (const auto& dist : grid.distributions) {
        const std::uint64_t dist_hash = fnv1a(dist.to_string());
        for (auto n : grid.input_sizes) {
            for (auto cf : grid.color_fractions) {
                const std::size_t sigma = fraction_of(n, cf);
                const std::uint64_t dataset_seed = mix_seed({grid.base_seed, dist_hash, n, sigma});
                for (auto bf : grid.buffer_fractions) {
                    ExperimentCell cell;
                    cell.index = cells.size();
                    cell.distribution = dist;
                    cell.n = n;
                    cell.sigma = sigma;
                    cell.k = fraction_of(n, bf);
                    cell.dataset_seed = dataset_seed;
                    cells.push_back(cell);
                }
            }
        }
    }
    return cells;
}

std::string format_sequence_file(const ColorSequence& seq, const SequenceFileHeader& header) {
    std::ostringstream os;
    os << "# n=" << header.n << " sigma=" << header.sigma << " spec=" << header.spec << " seed=" << header.seed << '\n';
    for (auto c : seq) {
        os << c.value << '\n';
    }
    return os.str();
}

void write_sequence_file(const std::filesystem::path& path, const ColorSequence& seq, const SequenceFileHeader& header) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
    }
    out << format_sequence_file(seq, header);
    if (!out) {
        throw Error(ErrorKind::Io, "write failed for " + path.string());
    }
}

ColorSequence parse_sequence(std::string_view text) {
    ColorSequence seq;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = trim(text.substr(0, nl));
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (line.empty() || line.front() == '#') {
            continue;
        }
        std::uint32_t v = 0;
        const auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), v);
        if (ec != std::errc{} || ptr != line.data() + line.size() || v == 0) {
            throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": expected a positive color id, got '" +
                                              std::string(line) + "'");
        }
        seq.emplace_back(v);
    }
    return seq;
}

ColorSequence read_sequence_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::Io, "cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_sequence(buf.str());
}

} // namespace rebuf
