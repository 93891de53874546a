#pragma once

// Free valuated groups of finite rank given coordinatewise: each basis
// element carries, per prime, the track k -> |p^k x|_p in a jump encoding.

#include "mixedab/integer.hpp"
#include "mixedab/json_io.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace mixedab {

/// A p-valuation: a natural number or infinity.
class HeightValue {
 public:
    constexpr HeightValue() = default;
    constexpr HeightValue(std::uint64_t n) : n_(n) {}  // NOLINT(google-explicit-constructor)
    static constexpr HeightValue inf() {
        HeightValue h;
        h.inf_ = true;
        return h;
    }

    constexpr bool is_inf() const noexcept { return inf_; }
    std::uint64_t value() const {
        if (inf_) throw std::logic_error("HeightValue: infinite");
        return n_;
    }
    /// Infinity absorbs addition.
    constexpr HeightValue plus(std::uint64_t k) const { return inf_ ? inf() : HeightValue(n_ + k); }

    friend constexpr bool operator==(HeightValue a, HeightValue b) { return a.inf_ == b.inf_ && (a.inf_ || a.n_ == b.n_); }
    friend constexpr std::strong_ordering operator<=>(HeightValue a, HeightValue b) {
        if (a.inf_ || b.inf_) return a.inf_ <=> b.inf_;
        return a.n_ <=> b.n_;
    }

    std::string str() const { return inf_ ? "inf" : std::to_string(n_); }

 private:
    bool inf_ = false;
    std::uint64_t n_ = 0;
};

struct Jump {
    std::uint64_t k;
    HeightValue v;
    friend bool operator==(const Jump&, const Jump&) = default;
};

struct TrackTail {
    enum class Kind { Gapless, InfAt, Jumpy };
    Kind kind = Kind::Gapless;
    std::uint64_t param = 0;  ///< position for InfAt, stride for Jumpy

    static TrackTail gapless() { return {}; }
    static TrackTail inf_at(std::uint64_t k) { return {Kind::InfAt, k}; }
    static TrackTail jumpy(std::uint64_t s) { return {Kind::Jumpy, s}; }
    friend bool operator==(const TrackTail&, const TrackTail&) = default;
};

/// v(0) = v0; v(k) = listed value at a jump position, otherwise v(k-1) + 1,
/// with the tail rule applied past the last listed jump.
struct ValueTrack {
    HeightValue v0;
    std::vector<Jump> jumps;
    TrackTail tail;

    static ValueTrack gapless(std::uint64_t v0 = 0) { return {v0, {}, {}}; }
    static ValueTrack infinite() { return {HeightValue::inf(), {}, {}}; }

    std::uint64_t last_jump_position() const { return jumps.empty() ? 0 : jumps.back().k; }
    friend bool operator==(const ValueTrack&, const ValueTrack&) = default;
};

inline HeightValue value_at(const ValueTrack& t, std::uint64_t k) {
    if (t.v0.is_inf()) return HeightValue::inf();
    std::uint64_t pos = 0;
    HeightValue val = t.v0;
    for (const auto& j : t.jumps) {
        if (j.k > k) return val.plus(k - pos);
        if (j.v.is_inf()) return HeightValue::inf();
        pos = j.k;
        val = j.v;
    }
    switch (t.tail.kind) {
        case TrackTail::Kind::Gapless: return val.plus(k - pos);
        case TrackTail::Kind::InfAt: return k >= t.tail.param ? HeightValue::inf() : val.plus(k - pos);
        case TrackTail::Kind::Jumpy: return val.plus(t.tail.param * (k - pos));
    }
    return val;
}

/// Position from which the track is infinite, if any.
inline std::optional<std::uint64_t> infinite_from(const ValueTrack& t) {
    if (t.v0.is_inf()) return 0;
    for (const auto& j : t.jumps)
        if (j.v.is_inf()) return j.k;
    if (t.tail.kind == TrackTail::Kind::InfAt) return t.tail.param;
    return std::nullopt;
}

inline std::vector<std::string> validate_track(const ValueTrack& t) {
    std::vector<std::string> out;
    std::uint64_t pos = 0;
    HeightValue val = t.v0;
    bool reached_inf = t.v0.is_inf();
    for (const auto& j : t.jumps) {
        const std::string at = "jump at k = " + std::to_string(j.k);
        if (j.k == 0 || j.k <= pos) {
            out.push_back(at + ": positions must be >= 1 and strictly increasing");
            continue;
        }
        if (reached_inf) {
            out.push_back(at + ": values after an infinite value must stay infinite");
            pos = j.k;
            continue;
        }
        const HeightValue before = val.plus(j.k - 1 - pos);
        if (!j.v.is_inf()) {
            if (j.v <= before) {
                out.push_back(at + ": value " + j.v.str() + " does not increase (previous " + before.str() + ")");
            } else if (j.v == before.plus(1)) {
                out.push_back(at + ": value " + j.v.str() + " is previous + 1, not a jump");
            }
        }
        reached_inf = j.v.is_inf();
        pos = j.k;
        val = j.v;
    }
    switch (t.tail.kind) {
        case TrackTail::Kind::Gapless: break;
        case TrackTail::Kind::InfAt:
            if (reached_inf) out.emplace_back("inf_at tail after an infinite value");
            if (t.tail.param == 0 || t.tail.param <= t.last_jump_position())
                out.emplace_back("inf_at position must exceed every jump position and be >= 1");
            break;
        case TrackTail::Kind::Jumpy:
            if (reached_inf) out.emplace_back("jumpy tail after an infinite value");
            if (t.tail.param < 2) out.emplace_back("jumpy stride must be >= 2");
            break;
    }
    return out;
}

/// Positions k >= 1 of the jump set K_p in increasing order (k = 0 is always
/// in K_p and is not listed). A jumpy tail contributes at most `jumpy_cut`
/// positions.
inline std::vector<std::uint64_t> jump_positions(const ValueTrack& t, std::uint64_t jumpy_cut) {
    std::vector<std::uint64_t> out;
    if (t.v0.is_inf()) return out;
    for (const auto& j : t.jumps) {
        out.push_back(j.k);
        if (j.v.is_inf()) return out;
    }
    if (t.tail.kind == TrackTail::Kind::InfAt) {
        out.push_back(t.tail.param);
    } else if (t.tail.kind == TrackTail::Kind::Jumpy) {
        for (std::uint64_t i = 1; i <= jumpy_cut; ++i) out.push_back(t.last_jump_position() + i);
    }
    return out;
}

/// f(alpha) for alpha < bound: the number of k >= 1 in K_p with v(k-1) = alpha.
inline std::vector<std::uint64_t> ulm_track(const ValueTrack& t, std::uint64_t bound) {
    std::vector<std::uint64_t> f(bound, 0);
    if (t.v0.is_inf()) return f;
    for (std::uint64_t k = 1;; ++k) {
        const HeightValue prev = value_at(t, k - 1);
        if (prev.is_inf() || prev.value() >= bound) break;
        if (value_at(t, k) != prev.plus(1)) ++f[prev.value()];
    }
    return f;
}

struct ValuatedCyclic {
    std::map<std::uint64_t, ValueTrack> tracks;

    ValueTrack track(std::uint64_t p) const {
        auto it = tracks.find(p);
        return it == tracks.end() ? ValueTrack::gapless() : it->second;
    }
    friend bool operator==(const ValuatedCyclic&, const ValuatedCyclic&) = default;
};

struct FreeValuated {
    std::vector<ValuatedCyclic> coords;

    std::size_t rank() const { return coords.size(); }
    std::set<std::uint64_t> primes() const {
        std::set<std::uint64_t> s;
        for (const auto& c : coords)
            for (const auto& kv : c.tracks) s.insert(kv.first);
        return s;
    }
    friend bool operator==(const FreeValuated&, const FreeValuated&) = default;
};

inline std::vector<std::uint64_t> ulm_valuated(const ValuatedCyclic& x, std::uint64_t p, std::uint64_t bound) {
    return ulm_track(x.track(p), bound);
}

inline std::vector<std::uint64_t> ulm_valuated(const FreeValuated& f, std::uint64_t p, std::uint64_t bound) {
    std::vector<std::uint64_t> out(bound, 0);
    for (const auto& c : f.coords) {
        const auto g = ulm_valuated(c, p, bound);
        for (std::size_t i = 0; i < bound; ++i) out[i] += g[i];
    }
    return out;
}

inline std::vector<std::string> validate(const FreeValuated& f) {
    std::vector<std::string> out;
    if (f.coords.empty()) out.emplace_back("free valuated group must have rank >= 1");
    for (std::size_t i = 0; i < f.coords.size(); ++i)
        for (const auto& [p, t] : f.coords[i].tracks) {
            if (!is_prime(p)) out.push_back("coord " + std::to_string(i) + ": key " + std::to_string(p) + " is not a prime");
            for (const auto& v : validate_track(t))
                out.push_back("coord " + std::to_string(i) + ", p = " + std::to_string(p) + ": " + v);
        }
    return out;
}

struct CoordTight {
    bool inf = false;
    /// First position of infinite value for inf coordinates; otherwise m_i
    /// with v(m_i) = n_p and no jumps beyond m_i.
    std::uint64_t offset = 0;
    friend bool operator==(const CoordTight&, const CoordTight&) = default;
};

struct TightEntry {
    std::uint64_t n = 2;
    std::vector<CoordTight> coords;

    std::vector<std::size_t> inf_coords() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < coords.size(); ++i)
            if (coords[i].inf) out.push_back(i);
        return out;
    }
    std::vector<std::size_t> fin_coords() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < coords.size(); ++i)
            if (!coords[i].inf) out.push_back(i);
        return out;
    }
};

using TightData = std::map<std::uint64_t, TightEntry>;

/// Coordinate-aligned search for n_p and F_p(n_p) = X_p + F_p(inf) with
/// values on X_p equal to n_p plus height. Absent when a coordinate has a
/// jumpy tail.
inline std::optional<TightEntry> tight_hypothesis(const FreeValuated& f, std::uint64_t p) {
    TightEntry e;
    std::uint64_t n = 2;
    for (const auto& c : f.coords) {
        const ValueTrack t = c.track(p);
        if (t.tail.kind == TrackTail::Kind::Jumpy) return std::nullopt;
        if (auto ki = infinite_from(t)) {
            if (*ki > 0) n = std::max(n, value_at(t, *ki - 1).value() + 1);
        } else {
            n = std::max(n, value_at(t, t.last_jump_position()).value());
        }
    }
    e.n = n;
    for (const auto& c : f.coords) {
        const ValueTrack t = c.track(p);
        if (auto ki = infinite_from(t)) {
            e.coords.push_back({true, *ki});
        } else {
            const std::uint64_t last = t.last_jump_position();
            e.coords.push_back({false, last + (n - value_at(t, last).value())});
        }
    }
    return e;
}

// JSON

inline nlohmann::json to_json(HeightValue h) {
    if (h.is_inf()) return "inf";
    return h.value();
}

inline HeightValue height_value_from_json(const nlohmann::json& j, const std::string& path) {
    if (j.is_string() && j.get<std::string>() == "inf") return HeightValue::inf();
    if (j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0))
        return HeightValue(j.get<std::uint64_t>());
    throw FormatError(path + ": expected a nonnegative integer or \"inf\"");
}

inline nlohmann::json to_json(const ValueTrack& t) {
    nlohmann::json jumps = nlohmann::json::array();
    for (const auto& j : t.jumps) jumps.push_back({j.k, to_json(j.v)});
    nlohmann::json tail;
    switch (t.tail.kind) {
        case TrackTail::Kind::Gapless: tail = "gapless"; break;
        case TrackTail::Kind::InfAt: tail = {{"inf_at", t.tail.param}}; break;
        case TrackTail::Kind::Jumpy: tail = {{"jumpy", t.tail.param}}; break;
    }
    return {{"v0", to_json(t.v0)}, {"jumps", jumps}, {"tail", tail}};
}

/// The tail "inf" means infinite from the position after the last jump;
/// on a track that is already infinite it is a no-op.
inline ValueTrack track_from_json(const nlohmann::json& j, const std::string& path) {
    if (!j.is_object()) throw FormatError(path + ": expected an object");
    ValueTrack t;
    t.v0 = j.contains("v0") ? height_value_from_json(j.at("v0"), path + ".v0") : HeightValue(0);
    if (j.contains("jumps")) {
        const auto& js = j.at("jumps");
        if (!js.is_array()) throw FormatError(path + ".jumps: expected an array");
        for (std::size_t i = 0; i < js.size(); ++i) {
            const std::string jp = path + ".jumps[" + std::to_string(i) + "]";
            if (!js[i].is_array() || js[i].size() != 2) throw FormatError(jp + ": expected [k, v]");
            const long long k = json_int(js[i][0], jp + "[0]");
            if (k < 1) throw FormatError(jp + "[0]: jump position must be >= 1");
            t.jumps.push_back({static_cast<std::uint64_t>(k), height_value_from_json(js[i][1], jp + "[1]")});
        }
    }
    if (j.contains("tail")) {
        const auto& tl = j.at("tail");
        if (tl.is_string()) {
            const std::string s = tl.get<std::string>();
            if (s == "gapless") {
                t.tail = TrackTail::gapless();
            } else if (s == "inf") {
                if (!infinite_from(t)) t.tail = TrackTail::inf_at(t.last_jump_position() + 1);
            } else {
                throw FormatError(path + ".tail: expected \"gapless\", \"inf\", {\"jumpy\": s} or {\"inf_at\": k}");
            }
        } else if (tl.is_object() && tl.contains("jumpy")) {
            const long long s = json_int(tl.at("jumpy"), path + ".tail.jumpy");
            if (s < 0) throw FormatError(path + ".tail.jumpy: stride must be positive");
            t.tail = TrackTail::jumpy(static_cast<std::uint64_t>(s));
        } else if (tl.is_object() && tl.contains("inf_at")) {
            const long long k = json_int(tl.at("inf_at"), path + ".tail.inf_at");
            if (k < 0) throw FormatError(path + ".tail.inf_at: position must be nonnegative");
            t.tail = TrackTail::inf_at(static_cast<std::uint64_t>(k));
        } else {
            throw FormatError(path + ".tail: expected \"gapless\", \"inf\", {\"jumpy\": s} or {\"inf_at\": k}");
        }
    }
    return t;
}

inline nlohmann::json to_json(const FreeValuated& f) {
    nlohmann::json coords = nlohmann::json::array();
    for (const auto& c : f.coords) {
        nlohmann::json tracks = nlohmann::json::object();
        for (const auto& [p, t] : c.tracks) tracks[std::to_string(p)] = to_json(t);
        coords.push_back({{"tracks", tracks}});
    }
    return {{"coords", coords}};
}

inline FreeValuated free_valuated_from_json(const nlohmann::json& j) {
    const auto& cs = json_field(j, "coords", "valuation");
    if (!cs.is_array()) throw FormatError("coords: expected an array");
    FreeValuated f;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        const std::string path = "coords[" + std::to_string(i) + "]";
        ValuatedCyclic c;
        if (cs[i].contains("tracks")) {
            const auto& ts = cs[i].at("tracks");
            if (!ts.is_object()) throw FormatError(path + ".tracks: expected an object");
            for (const auto& [key, tj] : ts.items()) {
                std::uint64_t p = 0;
                try {
                    std::size_t used = 0;
                    p = std::stoull(key, &used);
                    if (used != key.size()) throw std::invalid_argument(key);
                } catch (const std::exception&) {
                    throw FormatError(path + ".tracks." + key + ": key is not a prime number");
                }
                c.tracks[p] = track_from_json(tj, path + ".tracks." + key);
            }
        }
        f.coords.push_back(std::move(c));
    }
    return f;
}

}  // namespace mixedab
