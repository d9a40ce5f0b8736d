#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "zzgril/error.hpp"
#include "zzgril/f2.hpp"
#include "zzgril/simplex.hpp"

namespace zzgril {

enum class OpKind { Insert, Delete };

struct ZigzagOp {
    OpKind kind;
    Simplex simplex;

    friend bool operator==(const ZigzagOp&, const ZigzagOp&) = default;
};

// Simplexwise zigzag filtration. Node i is the complex after op i (1-based); node 0 is empty.
struct ZigzagFiltration {
    std::vector<ZigzagOp> ops;

    std::size_t size() const { return ops.size(); }

    // Throws StructuralError naming the first illegal op.
    void validate() const {
        std::map<Simplex, int> cofaces;
        for (std::size_t i = 0; i < ops.size(); ++i) {
            auto& [kind, s] = ops[i];
            auto it = cofaces.find(s);
            if (kind == OpKind::Insert) {
                if (it != cofaces.end())
                    throw StructuralError("op " + std::to_string(i) + ": insert of present simplex " + s.to_string());
                for (auto& f : s.facets()) {
                    auto fit = cofaces.find(f);
                    if (fit == cofaces.end())
                        throw StructuralError("op " + std::to_string(i) + ": insert of " + s.to_string() +
                                              " before facet " + f.to_string());
                    ++fit->second;
                }
                cofaces.emplace(s, 0);
            } else {
                if (it == cofaces.end())
                    throw StructuralError("op " + std::to_string(i) + ": delete of absent simplex " + s.to_string());
                if (it->second != 0)
                    throw StructuralError("op " + std::to_string(i) + ": delete of " + s.to_string() +
                                          " with present cofaces");
                for (auto& f : s.facets()) --cofaces[f];
                cofaces.erase(it);
            }
        }
    }

    // True when every simplex is deleted as often as it is inserted.
    bool is_closed() const {
        std::map<Simplex, int> count;
        for (auto& op : ops) count[op.simplex] += op.kind == OpKind::Insert ? 1 : -1;
        return std::all_of(count.begin(), count.end(), [](auto& kv) { return kv.second == 0; });
    }

    // Complex at node i.
    std::vector<Simplex> state(std::size_t node) const {
        std::map<Simplex, bool> present;
        for (std::size_t i = 0; i < node && i < ops.size(); ++i) {
            if (ops[i].kind == OpKind::Insert)
                present[ops[i].simplex] = true;
            else
                present.erase(ops[i].simplex);
        }
        std::vector<Simplex> out;
        for (auto& kv : present) out.push_back(kv.first);
        std::sort(out.begin(), out.end(), FaceOrder{});
        return out;
    }
};

struct Bar {
    int degree;
    int birth;
    int death;

    friend bool operator==(const Bar&, const Bar&) = default;
    friend auto operator<=>(const Bar& a, const Bar& b) {
        return std::tie(a.degree, a.birth, a.death) <=> std::tie(b.degree, b.birth, b.death);
    }
};

struct Barcode {
    std::vector<Bar> bars;
    int length = 0;

    std::vector<Bar> of_degree(int p) const {
        std::vector<Bar> out;
        for (auto& b : bars)
            if (b.degree == p) out.push_back(b);
        return out;
    }
};

// Maintains a cycle basis Z_p with distinct pivots per degree, each column either a boundary (with a
// (p+1)-chain whose boundary it is) or a live class labelled by its birth node. Follows the
// right-filtration maintenance scheme for simplexwise zigzag filtrations. Simplices are identified by
// caller-chosen keys; every op must respect zigzag legality, which is not rechecked here.
class ZigzagEngine {
public:
    explicit ZigzagEngine(int top_dim) : dims_(static_cast<std::size_t>(std::max(top_dim, 0)) + 1) {
        if (top_dim < 0) throw ParameterError("ZigzagEngine: negative top dimension");
    }

    int top_dim() const { return static_cast<int>(dims_.size()) - 1; }
    int node() const { return static_cast<int>(is_insert_.size()); }

    void insert(std::uint32_t key, int dim, const std::uint32_t* facets, std::size_t num_facets) {
        int op = node();
        is_insert_.push_back(1);
        auto& zd = dims_[static_cast<std::size_t>(dim)];
        std::uint32_t row = zd.next_row++;
        zd.owner.push_back(-1);
        zd.z_occ.emplace_back();
        if (key >= row_of_key_.size()) row_of_key_.resize(key + 1, -1);
        row_of_key_[key] = static_cast<std::int64_t>(row);

        if (dim == 0) {
            add_cycle(zd, F2Column{row}, op + 1);
            return;
        }
        auto& zb = dims_[static_cast<std::size_t>(dim - 1)];
        if (zb.chain_occ.size() < zd.next_row) zb.chain_occ.resize(zd.next_row);
        F2Column bd;
        bd.reserve(num_facets);
        for (std::size_t i = 0; i < num_facets; ++i) bd.push_back(static_cast<std::uint32_t>(row_of_key_[facets[i]]));
        std::sort(bd.begin(), bd.end());
        F2Column work = bd;
        used_.clear();
        while (!work.empty()) {
            std::int32_t s = zb.owner[work.back()];
            add_into(work, zb.z[static_cast<std::size_t>(s)], scratch_);
            used_.push_back(s);
        }
        std::int32_t killed = -1;
        for (auto s : used_) {
            if (zb.birth[static_cast<std::size_t>(s)] < 0) continue;
            if (killed < 0 || birth_less(zb.birth[static_cast<std::size_t>(killed)], zb.birth[static_cast<std::size_t>(s)]))
                killed = s;
        }
        if (killed < 0) {
            F2Column chain{row};
            for (auto s : used_) add_into(chain, zb.chain[static_cast<std::size_t>(s)], scratch_);
            add_cycle(zd, std::move(chain), op + 1);
            return;
        }
        auto k = static_cast<std::size_t>(killed);
        finished_.push_back({dim - 1, zb.birth[k], op});
        zb.owner[zb.z[k].back()] = -1;
        assign(zb.z[k], zb.z_occ, killed, std::move(bd));
        zb.birth[k] = -1;
        assign(zb.chain[k], zb.chain_occ, killed, F2Column{row});
        settle(zb, killed);
    }

    void remove(std::uint32_t key, int dim) {
        int op = node();
        is_insert_.push_back(0);
        auto& zd = dims_[static_cast<std::size_t>(dim)];
        auto r = static_cast<std::uint32_t>(row_of_key_[key]);
        row_of_key_[key] = -1;
        collect(zd.z_occ, r, zd.z, used_);

        if (used_.empty()) {
            // sigma is no cycle member: some boundary stops being one
            auto& zb = dims_[static_cast<std::size_t>(dim - 1)];
            collect(zb.chain_occ, r, zb.chain, holders_);
            if (holders_.empty()) throw StructuralError("zigzag engine: deleted simplex not found in any chain");
            auto alpha = *std::min_element(holders_.begin(), holders_.end(), [&](auto a, auto b) {
                return zb.z[static_cast<std::size_t>(a)].back() < zb.z[static_cast<std::size_t>(b)].back();
            });
            auto a = static_cast<std::size_t>(alpha);
            for (auto s : holders_) {
                if (s == alpha) continue;
                xor_into(zb.z[static_cast<std::size_t>(s)], zb.z_occ, s, zb.z[a]);
                xor_into(zb.chain[static_cast<std::size_t>(s)], zb.chain_occ, s, zb.chain[a]);
            }
            zb.birth[a] = op + 1;
            assign(zb.chain[a], zb.chain_occ, alpha, {});
            return;
        }

        if (dim > 0) {
            auto& zb = dims_[static_cast<std::size_t>(dim - 1)];
            collect(zb.chain_occ, r, zb.chain, holders_);
            const F2Column& z0 = zd.z[static_cast<std::size_t>(used_[0])];
            for (auto s : holders_) xor_into(zb.chain[static_cast<std::size_t>(s)], zb.chain_occ, s, z0);
        }
        std::sort(used_.begin(), used_.end(), [&](auto a, auto b) {
            return birth_less(zd.birth[static_cast<std::size_t>(a)], zd.birth[static_cast<std::size_t>(b)]);
        });
        auto alpha = static_cast<std::size_t>(used_[0]);
        finished_.push_back({dim, zd.birth[alpha], op});
        F2Column cur = zd.z[alpha];
        std::uint32_t cur_piv = cur.back();
        zd.owner[cur_piv] = -1;
        for (std::size_t i = 1; i < used_.size(); ++i) {
            auto a = static_cast<std::size_t>(used_[i]);
            std::uint32_t a_piv = zd.z[a].back();
            if (a_piv > cur_piv) {
                xor_into(zd.z[a], zd.z_occ, used_[i], cur);
            } else {
                F2Column old = zd.z[a];
                xor_into(zd.z[a], zd.z_occ, used_[i], cur);
                zd.owner[cur_piv] = used_[i];
                zd.owner[a_piv] = -1;
                cur = std::move(old);
                cur_piv = a_piv;
            }
        }
        release(zd, used_[0]);
    }

    // Number of live degree-p classes born at or before the given node.
    std::size_t live_born_by(int p, int node) const {
        if (p < 0 || p >= static_cast<int>(dims_.size())) return 0;
        auto& zd = dims_[static_cast<std::size_t>(p)];
        std::size_t n = 0;
        for (std::size_t s = 0; s < zd.z.size(); ++s)
            if (zd.in_use[s] && zd.birth[s] >= 1 && zd.birth[s] <= node) ++n;
        return n;
    }

    const std::vector<Bar>& finished() const { return finished_; }

    // Finished bars plus live classes closed at the current node.
    std::vector<Bar> bars() const {
        auto out = finished_;
        for (std::size_t p = 0; p < dims_.size(); ++p) {
            auto& zd = dims_[p];
            for (std::size_t s = 0; s < zd.z.size(); ++s)
                if (zd.in_use[s] && zd.birth[s] >= 1) out.push_back({static_cast<int>(p), zd.birth[s], node()});
        }
        return out;
    }

private:
    using Occurrences = std::vector<std::vector<std::int32_t>>;

    struct Basis {
        std::vector<F2Column> z;
        std::vector<F2Column> chain;
        std::vector<int> birth;  // -1 marks a boundary column
        std::vector<char> in_use;
        std::vector<std::int32_t> owner;  // pivot row -> slot
        std::vector<std::size_t> free_slots;
        Occurrences z_occ;      // row -> slots whose column contains it
        Occurrences chain_occ;  // (p+1)-row -> slots whose chain contains it
        std::uint32_t next_row = 0;
    };

    // Birth order: a class born by a deletion is older than every later-indexed class, while
    // among insertion births the lower index is older.
    bool birth_less(int a, int b) const {
        if (a == b) return false;
        if (a < b) return is_insert_[static_cast<std::size_t>(b - 1)] != 0;
        return is_insert_[static_cast<std::size_t>(a - 1)] == 0;
    }

    // Occurrence lists only grow; stale or repeated entries are dropped here when a row is read.
    static void collect(Occurrences& occ, std::uint32_t r, const std::vector<F2Column>& cols,
                        std::vector<std::int32_t>& out) {
        auto& v = occ[r];
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        v.erase(std::remove_if(v.begin(), v.end(),
                               [&](std::int32_t s) { return !contains(cols[static_cast<std::size_t>(s)], r); }),
                v.end());
        out = v;
    }

    // target += src for the column held by slot, keeping the occurrence lists in sync.
    void xor_into(F2Column& target, Occurrences& occ, std::int32_t slot, const F2Column& src) {
        scratch_.clear();
        auto a = target.begin(), ae = target.end();
        auto b = src.begin(), be = src.end();
        while (a != ae || b != be) {
            if (b == be || (a != ae && *a < *b)) {
                scratch_.push_back(*a++);
            } else if (a == ae || *b < *a) {
                occ[*b].push_back(slot);
                scratch_.push_back(*b++);
            } else {
                ++a;
                ++b;
            }
        }
        target.swap(scratch_);
    }

    static void assign(F2Column& target, Occurrences& occ, std::int32_t slot, F2Column value) {
        target = std::move(value);
        for (auto r : target) occ[r].push_back(slot);
    }

    static std::int32_t slot_for(Basis& zd) {
        if (!zd.free_slots.empty()) {
            auto s = zd.free_slots.back();
            zd.free_slots.pop_back();
            zd.in_use[s] = 1;
            return static_cast<std::int32_t>(s);
        }
        zd.z.emplace_back();
        zd.chain.emplace_back();
        zd.birth.push_back(-1);
        zd.in_use.push_back(1);
        return static_cast<std::int32_t>(zd.z.size() - 1);
    }

    static void release(Basis& zd, std::int32_t slot) {
        auto s = static_cast<std::size_t>(slot);
        assign(zd.z[s], zd.z_occ, slot, {});
        assign(zd.chain[s], zd.chain_occ, slot, {});
        zd.birth[s] = -1;
        zd.in_use[s] = 0;
        zd.free_slots.push_back(s);
    }

    void add_cycle(Basis& zd, F2Column col, int birth) {
        auto s = slot_for(zd);
        auto u = static_cast<std::size_t>(s);
        zd.owner[col.back()] = s;
        assign(zd.z[u], zd.z_occ, s, std::move(col));
        zd.birth[u] = birth;
    }

    // Restore distinct pivots after column c changed. Boundaries may be added anywhere; a live class
    // may only absorb classes that are older in the birth order.
    void settle(Basis& zd, std::int32_t c) {
        for (;;) {
            auto cu = static_cast<std::size_t>(c);
            std::uint32_t p = zd.z[cu].back();
            std::int32_t o = zd.owner[p];
            if (o < 0 || o == c) {
                zd.owner[p] = c;
                return;
            }
            auto ou = static_cast<std::size_t>(o);
            bool c_bd = zd.birth[cu] < 0;
            bool o_bd = zd.birth[ou] < 0;
            if ((c_bd && !o_bd) || (!c_bd && !o_bd && birth_less(zd.birth[cu], zd.birth[ou]))) {
                xor_into(zd.z[ou], zd.z_occ, o, zd.z[cu]);
                zd.owner[p] = c;
                c = o;
            } else {
                xor_into(zd.z[cu], zd.z_occ, c, zd.z[ou]);
                if (c_bd && o_bd) xor_into(zd.chain[cu], zd.chain_occ, c, zd.chain[ou]);
            }
        }
    }

    std::vector<Basis> dims_;
    std::vector<std::int64_t> row_of_key_;
    std::vector<char> is_insert_;
    std::vector<Bar> finished_;
    std::vector<std::int32_t> used_;
    std::vector<std::int32_t> holders_;
    F2Column scratch_;
};

// Interval decomposition for degrees 0..max_degree, sorted by (degree, birth, death).
inline Barcode compute_barcode(const ZigzagFiltration& f, int max_degree) {
    if (max_degree < 0) throw ParameterError("compute_barcode: negative max_degree");
    f.validate();
    ZigzagEngine engine(max_degree + 1);
    std::map<Simplex, std::uint32_t> keys;
    std::vector<std::uint32_t> facet_keys;
    for (auto& [kind, s] : f.ops) {
        auto [it, fresh] = keys.emplace(s, static_cast<std::uint32_t>(keys.size()));
        if (s.dimension() > max_degree + 1) continue;
        if (kind == OpKind::Insert) {
            facet_keys.clear();
            for (auto& fc : s.facets()) facet_keys.push_back(keys.at(fc));
            engine.insert(it->second, s.dimension(), facet_keys.data(), facet_keys.size());
        } else {
            engine.remove(it->second, s.dimension());
        }
    }
    Barcode bc;
    bc.length = static_cast<int>(f.size());
    for (auto& b : engine.bars())
        if (b.degree <= max_degree && b.birth <= b.death) bc.bars.push_back(b);
    std::sort(bc.bars.begin(), bc.bars.end());
    return bc;
}

inline std::size_t count_full_bars(const Barcode& bc, int lo, int hi, int p) {
    if (lo < 1 || lo > hi || hi > bc.length) throw ParameterError("count_full_bars: span out of range");
    std::size_t n = 0;
    for (auto& b : bc.bars)
        if (b.degree == p && b.birth <= lo && b.death >= hi) ++n;
    return n;
}

}  // namespace zzgril
