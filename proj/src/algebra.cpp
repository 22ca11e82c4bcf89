#include "talg/algebra.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace talg {

// ---------------------------------------------------------------- tables

OperationTable::OperationTable(std::string name, std::size_t arity, std::uint32_t universe,
                               std::vector<Element> table)
    : name_(std::move(name)), arity_(arity), universe_(universe), table_(std::move(table)) {
    if (name_.empty()) throw InvalidInput("operation with an empty name");
    if (arity_ == 0) throw InvalidInput("operation '" + name_ + "' has arity 0");
    if (universe_ == 0) throw InvalidInput("operation '" + name_ + "' over an empty universe");
    std::uint64_t expected = checked_power(universe_, arity_, 1ULL << 28);
    if (table_.size() != expected) {
        throw InvalidInput("operation '" + name_ + "': table has " + std::to_string(table_.size()) +
                           " entries, expected " + std::to_string(expected));
    }
    for (Element v : table_) {
        if (v >= universe_)
            throw InvalidInput("operation '" + name_ + "': table entry " + std::to_string(v) +
                               " outside the universe");
    }
}

bool OperationTable::is_idempotent() const {
    for (Element a = 0; a < universe_; ++a) {
        std::uint64_t code = 0;
        for (std::size_t i = 0; i < arity_; ++i) code = code * universe_ + a;
        if (table_[code] != a) return false;
    }
    return true;
}

OperationTable OperationTable::renamed(std::string name) const {
    return OperationTable(std::move(name), arity_, universe_, table_);
}

FiniteAlgebra::FiniteAlgebra(std::uint32_t size, std::vector<OperationTable> operations)
    : size_(size), ops_(std::move(operations)) {
    if (size_ == 0) throw InvalidInput("algebra with an empty universe");
    for (std::size_t i = 0; i < ops_.size(); ++i) {
        if (ops_[i].universe() != size_)
            throw InvalidInput("operation '" + ops_[i].name() + "' is over a different universe");
        if (!index_.emplace(ops_[i].name(), i).second)
            throw InvalidInput("duplicate operation name '" + ops_[i].name() + "'");
    }
}

const OperationTable* FiniteAlgebra::find(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? nullptr : &ops_[it->second];
}

const OperationTable& FiniteAlgebra::operation(const std::string& name) const {
    const auto* op = find(name);
    if (!op) throw InvalidInput("unknown operation symbol '" + name + "'");
    return *op;
}

bool FiniteAlgebra::is_idempotent() const {
    return std::all_of(ops_.begin(), ops_.end(), [](const auto& op) { return op.is_idempotent(); });
}

bool FiniteAlgebra::same_signature(const FiniteAlgebra& other) const {
    if (ops_.size() != other.ops_.size()) return false;
    for (const auto& op : ops_) {
        const auto* o = other.find(op.name());
        if (!o || o->arity() != op.arity()) return false;
    }
    return true;
}

// ---------------------------------------------------------------- evaluation

TermEvaluator::TermEvaluator(const FiniteAlgebra& alg, Term t) : alg_(&alg), term_(std::move(t)) {
    std::vector<const Term*> stack{&term_};
    std::unordered_map<const void*, bool> seen;
    while (!stack.empty()) {
        const Term* n = stack.back();
        stack.pop_back();
        if (!seen.emplace(n->id(), true).second) continue;
        if (n->kind() == Term::Kind::Apply) {
            const auto* op = alg.find(n->symbol());
            if (!op) throw InvalidInput("unknown operation symbol '" + n->symbol() + "'");
            if (op->arity() != n->children().size()) {
                throw InvalidInput("symbol '" + n->symbol() + "' has arity " +
                                   std::to_string(op->arity()) + " but is applied to " +
                                   std::to_string(n->children().size()) + " arguments");
            }
            ops_.emplace(n->id(), op);
        }
        if (n->kind() == Term::Kind::Compose) stack.push_back(&n->outer());
        for (const auto& c : n->children()) stack.push_back(&c);
    }
}

namespace {

using Memo = std::unordered_map<const void*, Element>;

Element eval_rec(const Term& t, std::span<const Element> args,
                 const std::unordered_map<const void*, const OperationTable*>& ops, Memo& memo) {
    switch (t.kind()) {
    case Term::Kind::Variable:
        return args[t.var_index()];
    case Term::Kind::Apply: {
        if (auto it = memo.find(t.id()); it != memo.end()) return it->second;
        const OperationTable& op = *ops.at(t.id());
        std::uint64_t code = 0;
        for (const auto& c : t.children()) code = code * op.universe() + eval_rec(c, args, ops, memo);
        Element v = op.at(code);
        memo.emplace(t.id(), v);
        return v;
    }
    case Term::Kind::Compose: {
        if (auto it = memo.find(t.id()); it != memo.end()) return it->second;
        Tuple inner(t.outer().arity());
        for (std::size_t i = 0; i < inner.size(); ++i) inner[i] = eval_rec(t.children()[i], args, ops, memo);
        Memo outer_memo;
        Element v = eval_rec(t.outer(), inner, ops, outer_memo);
        memo.emplace(t.id(), v);
        return v;
    }
    }
    return 0;
}

} // namespace

Element TermEvaluator::operator()(std::span<const Element> args) const {
    if (args.size() < term_.arity()) {
        throw InvalidInput("term uses variable x" + std::to_string(term_.arity() - 1) + " but only " +
                           std::to_string(args.size()) + " arguments were given");
    }
    for (Element a : args)
        if (a >= alg_->size()) throw InvalidInput("argument outside the universe");
    Memo memo;
    return eval_rec(term_, args, ops_, memo);
}

Element eval_term(const FiniteAlgebra& alg, const Term& t, std::span<const Element> args) {
    return TermEvaluator(alg, t)(args);
}

namespace {

class TableBuilder {
public:
    TableBuilder(const FiniteAlgebra& alg, std::uint64_t guard) : alg_(alg), guard_(guard) {}

    const std::vector<Element>& build(const Term& t, std::size_t ambient) {
        auto key = std::make_pair(t.id(), ambient);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        const std::uint32_t n = alg_.size();
        const std::uint64_t size = checked_power(n, ambient, guard_);
        std::vector<Element> out(size);
        switch (t.kind()) {
        case Term::Kind::Variable: {
            std::uint64_t stride = checked_power(n, ambient - 1 - t.var_index());
            for (std::uint64_t x = 0; x < size; ++x) out[x] = static_cast<Element>((x / stride) % n);
            break;
        }
        case Term::Kind::Apply: {
            const OperationTable& op = alg_.operation(t.symbol());
            if (op.arity() != t.children().size())
                throw InvalidInput("symbol '" + t.symbol() + "' applied with the wrong arity");
            std::vector<const std::vector<Element>*> ch;
            for (const auto& c : t.children()) ch.push_back(&build(c, ambient));
            for (std::uint64_t x = 0; x < size; ++x) {
                std::uint64_t code = 0;
                for (const auto* c : ch) code = code * n + (*c)[x];
                out[x] = op.at(code);
            }
            break;
        }
        case Term::Kind::Compose: {
            std::size_t o = t.outer().arity();
            std::vector<const std::vector<Element>*> ch;
            for (std::size_t j = 0; j < o; ++j) ch.push_back(&build(t.children()[j], ambient));
            const auto& outer = build(t.outer(), o);
            for (std::uint64_t x = 0; x < size; ++x) {
                std::uint64_t code = 0;
                for (const auto* c : ch) code = code * n + (*c)[x];
                out[x] = outer[code];
            }
            break;
        }
        }
        return memo_.emplace(key, std::move(out)).first->second;
    }

private:
    const FiniteAlgebra& alg_;
    std::uint64_t guard_;
    std::map<std::pair<const void*, std::size_t>, std::vector<Element>> memo_;
};

} // namespace

OperationTable term_table(const FiniteAlgebra& alg, const Term& t, std::size_t arity, std::string name,
                          std::uint64_t guard) {
    if (arity < t.arity() || arity == 0) {
        throw InvalidInput("term_table: arity " + std::to_string(arity) + " below the term's arity " +
                           std::to_string(t.arity()));
    }
    TableBuilder b(alg, guard);
    return OperationTable(std::move(name), arity, alg.size(), b.build(t, arity));
}

TermFunction::TermFunction(const FiniteAlgebra& alg, const Term& t, std::size_t arity,
                           std::uint64_t table_limit)
    : arity_(arity) {
    if (arity < t.arity()) throw InvalidInput("TermFunction: arity below the term's arity");
    bool small = true;
    try {
        checked_power(alg.size(), arity, table_limit);
    } catch (const BudgetExceeded&) {
        small = false;
    }
    if (small) {
        try {
            table_.emplace(term_table(alg, t, arity, "t", table_limit));
            return;
        } catch (const BudgetExceeded&) {
            // an inner node is wider than the limit; fall back to lazy evaluation
        }
    }
    eval_.emplace(alg, t);
}

TermFunction::TermFunction(OperationTable table) : arity_(table.arity()), table_(std::move(table)) {}

Element TermFunction::operator()(std::span<const Element> args) const {
    return table_ ? (*table_)(args) : (*eval_)(args);
}

// ---------------------------------------------------------------- products

FiniteAlgebra product(std::span<const FiniteAlgebra> algs) {
    if (algs.empty()) throw InvalidInput("product of an empty list of algebras");
    for (const auto& a : algs)
        if (!a.same_signature(algs.front())) throw InvalidInput("product: signature mismatch");
    std::vector<std::uint32_t> sizes;
    std::uint64_t total = 1;
    for (const auto& a : algs) {
        sizes.push_back(a.size());
        total *= a.size();
        if (total > (1u << 20)) throw BudgetExceeded("product universe exceeds 2^20 elements");
    }
    const auto N = static_cast<std::uint32_t>(total);
    std::vector<Tuple> coords(N);
    for (std::uint32_t e = 0; e < N; ++e) coords[e] = decode_tuple(e, sizes);

    std::vector<OperationTable> ops;
    for (const auto& op0 : algs.front().operations()) {
        const std::size_t k = op0.arity();
        std::uint64_t cells = checked_power(N, k, 1ULL << 26);
        std::vector<const OperationTable*> factors;
        for (const auto& a : algs) factors.push_back(&a.operation(op0.name()));
        std::vector<Element> table(cells);
        Tuple args(k, 0), coord_args(k), value(algs.size());
        for (std::uint64_t x = 0; x < cells; ++x) {
            for (std::size_t i = 0; i < algs.size(); ++i) {
                for (std::size_t j = 0; j < k; ++j) coord_args[j] = coords[args[j]][i];
                value[i] = (*factors[i])(coord_args);
            }
            table[x] = static_cast<Element>(encode_tuple(value, sizes));
            next_tuple(args, N);
        }
        ops.emplace_back(op0.name(), k, N, std::move(table));
    }
    return FiniteAlgebra(N, std::move(ops));
}

FiniteAlgebra power(const FiniteAlgebra& alg, std::size_t m) {
    if (m == 0) throw InvalidInput("power: exponent must be positive");
    std::vector<FiniteAlgebra> copies(m, alg);
    return product(copies);
}

FiniteAlgebra subalgebra(const FiniteAlgebra& alg, const ElementSet& sub) {
    if (sub.empty()) throw InvalidInput("subalgebra: empty subuniverse");
    if (!is_subuniverse(alg, sub)) throw InvalidInput("subalgebra: set is not closed under the operations");
    const auto m = static_cast<std::uint32_t>(sub.size());
    std::vector<Element> relabel(alg.size(), 0);
    for (std::uint32_t i = 0; i < m; ++i) relabel[sub[i]] = i;
    std::vector<OperationTable> ops;
    for (const auto& op : alg.operations()) {
        ops.push_back(OperationTable::from_function(op.name(), op.arity(), m, [&](std::span<const Element> a) {
            Tuple orig(a.size());
            for (std::size_t i = 0; i < a.size(); ++i) orig[i] = sub[a[i]];
            return relabel[op(orig)];
        }));
    }
    return FiniteAlgebra(m, std::move(ops));
}

// ---------------------------------------------------------------- closure

namespace {

std::string key_of(const Element* p, std::size_t width) {
    return std::string(reinterpret_cast<const char*>(p), width * sizeof(Element));
}

} // namespace

SubpowerClosure::SubpowerClosure(const FiniteAlgebra& alg, std::size_t width,
                                 std::span<const Tuple> generators, const ClosureOptions& options)
    : alg_(&alg), width_(width), generator_count_(generators.size()) {
    for (std::size_t g = 0; g < generators.size(); ++g) {
        const auto& t = generators[g];
        if (t.size() != width_) throw InvalidInput("closure: generator of the wrong width");
        for (Element e : t)
            if (e >= alg.size()) throw InvalidInput("closure: generator outside the universe");
        if (find(t)) continue;
        add(t, SIZE_MAX, {}, 0);
        var_of_.back() = g;
        if (options.stop_when && options.stop_when(t)) {
            stopped_at_ = count_ - 1;
            complete_ = false;
            return;
        }
    }

    const std::uint32_t n = alg.size();
    std::size_t lo = 0;
    std::size_t hi = count_;
    std::size_t round = 1;
    Tuple result(width_);
    std::vector<std::size_t> idx;
    while (lo < hi) {
        for (std::size_t o = 0; o < alg.operations().size(); ++o) {
            const OperationTable& op = alg.operations()[o];
            const std::size_t m = op.arity();
            idx.assign(m, 0);
            // idx[p] is the first index drawn from the newest round.
            for (std::size_t p = 0; p < m; ++p) {
                if (p > 0 && lo == 0) break;
                auto lower = [&](std::size_t q) -> std::size_t { return q == p ? lo : 0; };
                auto upper = [&](std::size_t q) -> std::size_t { return q < p ? lo : hi; };
                for (std::size_t q = 0; q < m; ++q) idx[q] = lower(q);
                bool empty = false;
                for (std::size_t q = 0; q < m; ++q) empty = empty || lower(q) >= upper(q);
                if (empty) continue;
                while (true) {
                    if (applications_ >= options.max_applications) {
                        complete_ = false;
                        return;
                    }
                    ++applications_;
                    for (std::size_t c = 0; c < width_; ++c) {
                        std::uint64_t code = 0;
                        for (std::size_t q = 0; q < m; ++q) code = code * n + data_[idx[q] * width_ + c];
                        result[c] = op.at(code);
                    }
                    if (!find(result)) {
                        if (count_ >= options.max_elements) {
                            complete_ = false;
                            return;
                        }
                        add(result, o, idx, round);
                        if (options.stop_when && options.stop_when(result)) {
                            stopped_at_ = count_ - 1;
                            complete_ = false;
                            return;
                        }
                    }
                    std::size_t q = m;
                    while (q-- > 0) {
                        if (++idx[q] < upper(q)) break;
                        idx[q] = lower(q);
                    }
                    if (q == SIZE_MAX) break;
                }
            }
        }
        lo = hi;
        hi = count_;
        ++round;
    }
}

bool SubpowerClosure::add(std::span<const Element> t, std::size_t op, std::span<const std::size_t> parents,
                          std::size_t round) {
    auto [it, inserted] = index_.emplace(key_of(t.data(), width_), count_);
    if (!inserted) return false;
    data_.insert(data_.end(), t.begin(), t.end());
    var_of_.push_back(SIZE_MAX);
    op_of_.push_back(op);
    parents_.emplace_back(parents.begin(), parents.end());
    round_.push_back(round);
    terms_.emplace_back();
    ++count_;
    return true;
}

std::optional<std::size_t> SubpowerClosure::find(std::span<const Element> t) const {
    if (t.size() != width_) return std::nullopt;
    auto it = index_.find(key_of(t.data(), width_));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Term SubpowerClosure::term_for(std::size_t i) const {
    if (i >= count_) throw InvalidInput("closure: element index out of range");
    if (terms_[i]) return *terms_[i];
    Term t = Term::var(0);
    if (var_of_[i] != SIZE_MAX) {
        t = Term::var(var_of_[i]);
    } else {
        std::vector<Term> ch;
        for (std::size_t p : parents_[i]) ch.push_back(term_for(p));
        t = Term::apply(alg_->operations()[op_of_[i]].name(), std::move(ch));
    }
    terms_[i] = t;
    return t;
}

ElementSet generate_subuniverse(const FiniteAlgebra& alg, const ElementSet& seed) {
    std::vector<Tuple> gens;
    for (Element e : seed) {
        if (e >= alg.size()) throw InvalidInput("generate_subuniverse: seed element outside the universe");
        gens.push_back({e});
    }
    SubpowerClosure c(alg, 1, gens);
    ElementSet out;
    for (std::size_t i = 0; i < c.size(); ++i) out.push_back(c.element(i)[0]);
    return make_set(std::move(out));
}

bool is_subuniverse(const FiniteAlgebra& alg, const ElementSet& s) {
    for (Element e : s)
        if (e >= alg.size()) return false;
    if (s.empty()) return true;
    for (const auto& op : alg.operations()) {
        Tuple idx(op.arity(), 0), args(op.arity());
        do {
            for (std::size_t i = 0; i < idx.size(); ++i) args[i] = s[idx[i]];
            if (!set_contains(s, op(args))) return false;
        } while (next_tuple(idx, static_cast<std::uint32_t>(s.size())));
    }
    return true;
}

std::vector<ElementSet> all_subuniverses(const FiniteAlgebra& alg, std::uint32_t max_size) {
    if (alg.size() > max_size) {
        throw BudgetExceeded("subuniverse enumeration needs n <= " + std::to_string(max_size) +
                             ", got " + std::to_string(alg.size()));
    }
    std::vector<ElementSet> out;
    for (std::uint64_t mask = 1; mask < (1ULL << alg.size()); ++mask) {
        ElementSet seed;
        for (Element e = 0; e < alg.size(); ++e)
            if (mask >> e & 1) seed.push_back(e);
        out.push_back(generate_subuniverse(alg, seed));
    }
    std::sort(out.begin(), out.end(), [](const ElementSet& a, const ElementSet& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---------------------------------------------------------------- congruences

std::uint32_t Congruence::block_count() const {
    std::uint32_t m = 0;
    for (auto b : block) m = std::max(m, b + 1);
    return m;
}

std::vector<ElementSet> Congruence::blocks() const {
    std::vector<ElementSet> out(block_count());
    for (Element e = 0; e < block.size(); ++e) out[block[e]].push_back(e);
    return out;
}

Congruence Congruence::diagonal(std::uint32_t n) {
    Congruence c;
    c.block.resize(n);
    std::iota(c.block.begin(), c.block.end(), 0u);
    return c;
}

Congruence Congruence::full(std::uint32_t n) { return Congruence{std::vector<std::uint32_t>(n, 0)}; }

Congruence Congruence::from_blocks(std::uint32_t n, const std::vector<ElementSet>& blocks) {
    std::vector<std::uint32_t> raw(n, UINT32_MAX);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        for (Element e : blocks[b]) {
            if (e >= n || raw[e] != UINT32_MAX) throw InvalidInput("congruence blocks do not partition the universe");
            raw[e] = static_cast<std::uint32_t>(b);
        }
    }
    // normalise to restricted-growth form
    std::vector<std::uint32_t> rename(blocks.size(), UINT32_MAX);
    Congruence c;
    std::uint32_t next = 0;
    for (Element e = 0; e < n; ++e) {
        if (raw[e] == UINT32_MAX) throw InvalidInput("congruence blocks do not cover the universe");
        if (rename[raw[e]] == UINT32_MAX) rename[raw[e]] = next++;
        c.block.push_back(rename[raw[e]]);
    }
    return c;
}

bool is_congruence(const FiniteAlgebra& alg, const Congruence& c) {
    const std::uint32_t n = alg.size();
    if (c.block.size() != n) return false;
    for (const auto& op : alg.operations()) {
        const std::size_t k = op.arity();
        Tuple x(k, 0), y;
        do {
            Element fx = op(x);
            for (std::size_t i = 0; i < k; ++i) {
                for (Element b = x[i] + 1; b < n; ++b) {
                    if (!c.related(x[i], b)) continue;
                    y = x;
                    y[i] = b;
                    if (!c.related(fx, op(y))) return false;
                }
            }
        } while (next_tuple(x, n));
    }
    return true;
}

std::vector<Congruence> congruences(const FiniteAlgebra& alg, std::uint32_t max_size) {
    const std::uint32_t n = alg.size();
    if (n > max_size) {
        throw BudgetExceeded("congruence enumeration needs n <= " + std::to_string(max_size) + ", got " +
                             std::to_string(n));
    }
    std::vector<Congruence> out;
    // restricted-growth strings a[0]=0, a[i] <= 1 + max(a[0..i-1])
    std::vector<std::uint32_t> a(n, 0), mx(n, 0);
    while (true) {
        Congruence c{a};
        if (is_congruence(alg, c)) out.push_back(c);
        std::size_t i = n;
        while (i-- > 1) {
            if (a[i] <= mx[i - 1]) break;
        }
        if (i == 0 || i == SIZE_MAX) break;
        ++a[i];
        mx[i] = std::max(mx[i - 1], a[i]);
        for (std::size_t j = i + 1; j < n; ++j) {
            a[j] = 0;
            mx[j] = mx[i];
        }
    }
    return out;
}

bool is_simple(const FiniteAlgebra& alg, std::uint32_t max_size) {
    auto cs = congruences(alg, max_size);
    for (const auto& c : cs) {
        std::uint32_t k = c.block_count();
        if (k != 1 && k != alg.size()) return false;
    }
    return true;
}

FiniteAlgebra quotient(const FiniteAlgebra& alg, const Congruence& c) {
    const std::uint32_t n = alg.size();
    if (c.block.size() != n) throw InvalidInput("quotient: partition size differs from the universe");
    const std::uint32_t m = c.block_count();
    std::vector<OperationTable> ops;
    for (const auto& op : alg.operations()) {
        const std::size_t k = op.arity();
        std::vector<Element> table(checked_power(m, k, 1ULL << 26), UINT32_MAX);
        Tuple x(k, 0), bx(k);
        do {
            for (std::size_t i = 0; i < k; ++i) bx[i] = c.block[x[i]];
            auto code = encode_tuple(bx, m);
            Element v = c.block[op(x)];
            if (table[code] == UINT32_MAX) {
                table[code] = v;
            } else if (table[code] != v) {
                throw InvalidInput("quotient: operation '" + op.name() +
                                   "' depends on the choice of representatives; the partition is not a congruence");
            }
        } while (next_tuple(x, n));
        ops.emplace_back(op.name(), k, m, std::move(table));
    }
    return FiniteAlgebra(m, std::move(ops));
}

// ---------------------------------------------------------------- identities

bool check_identity(const FiniteAlgebra& alg, const Term& s, const Term& t) {
    std::size_t arity = std::max<std::size_t>({s.arity(), t.arity(), 1});
    return term_table(alg, s, arity) == term_table(alg, t, arity);
}

bool is_cyclic_op(const OperationTable& op) {
    if (!op.is_idempotent()) return false;
    const std::size_t k = op.arity();
    Tuple x(k, 0);
    do {
        if (op(x) != op(cyclic_shift(x))) return false;
    } while (next_tuple(x, op.universe()));
    return true;
}

bool is_wnu_op(const OperationTable& op) {
    if (op.arity() < 2 || !op.is_idempotent()) return false;
    const std::size_t k = op.arity();
    const std::uint32_t n = op.universe();
    Tuple t(k);
    for (Element x = 0; x < n; ++x) {
        for (Element y = 0; y < n; ++y) {
            std::fill(t.begin(), t.end(), x);
            t[0] = y;
            Element first = op(t);
            for (std::size_t i = 1; i < k; ++i) {
                std::fill(t.begin(), t.end(), x);
                t[i] = y;
                if (op(t) != first) return false;
            }
        }
    }
    return true;
}

std::optional<std::vector<TaylorIdentity>> is_taylor_op(const OperationTable& op) {
    if (!op.is_idempotent()) return std::nullopt;
    const std::size_t m = op.arity();
    if (m > 16) throw BudgetExceeded("Taylor identity search limited to arity 16");
    const std::uint32_t n = op.universe();
    auto holds = [&](std::uint32_t lhs, std::uint32_t rhs) {
        Tuple l(m), r(m);
        for (Element x = 0; x < n; ++x) {
            for (Element y = 0; y < n; ++y) {
                for (std::size_t q = 0; q < m; ++q) {
                    l[q] = (lhs >> q & 1) ? y : x;
                    r[q] = (rhs >> q & 1) ? y : x;
                }
                if (op(l) != op(r)) return false;
            }
        }
        return true;
    };
    std::vector<TaylorIdentity> out;
    for (std::size_t j = 0; j < m; ++j) {
        bool found = false;
        for (std::uint32_t lhs = 0; lhs < (1u << m) && !found; ++lhs) {
            if (lhs >> j & 1) continue;
            for (std::uint32_t rhs = 0; rhs < (1u << m) && !found; ++rhs) {
                if (!(rhs >> j & 1)) continue;
                if (holds(lhs, rhs)) {
                    TaylorIdentity id{j, std::vector<bool>(m), std::vector<bool>(m)};
                    for (std::size_t q = 0; q < m; ++q) {
                        id.lhs[q] = lhs >> q & 1;
                        id.rhs[q] = rhs >> q & 1;
                    }
                    out.push_back(std::move(id));
                    found = true;
                }
            }
        }
        if (!found) return std::nullopt;
    }
    return out;
}

std::optional<std::vector<TaylorIdentity>> is_taylor_term(const FiniteAlgebra& alg, const Term& t) {
    return is_taylor_op(term_table(alg, t, std::max<std::size_t>(t.arity(), 1)));
}

// ---------------------------------------------------------------- generator term

UniversalGeneratorTerm construct_universal_generator_term(const FiniteAlgebra& alg,
                                                          std::uint64_t max_arity) {
    if (!alg.is_idempotent()) throw InvalidInput("universal generator term requires an idempotent algebra");
    if (alg.size() > 16) throw BudgetExceeded("universal generator term enumerates subsets; n <= 16 required");
    UniversalGeneratorTerm u;
    std::uint64_t arity = 1;
    for (std::uint64_t mask = 1; mask < (1ULL << alg.size()); ++mask) {
        std::vector<Tuple> gens;
        ElementSet seed;
        for (Element e = 0; e < alg.size(); ++e) {
            if (mask >> e & 1) {
                seed.push_back(e);
                gens.push_back({e});
            }
        }
        SubpowerClosure c(alg, 1, gens);
        std::vector<std::pair<Element, std::size_t>> extra;
        for (std::size_t i = seed.size(); i < c.size(); ++i) extra.emplace_back(c.element(i)[0], i);
        std::sort(extra.begin(), extra.end());
        for (auto [b, i] : extra) {
            arity *= seed.size();
            if (arity > max_arity)
                throw BudgetExceeded("universal generator term arity exceeds " + std::to_string(max_arity));
            u.factors.push_back({seed, b, c.term_for(i), seed.size()});
        }
    }
    std::vector<Term> terms;
    std::vector<std::size_t> arities;
    for (const auto& f : u.factors) {
        terms.push_back(f.term);
        arities.push_back(f.arity);
    }
    u.term = star_product(terms, arities);
    u.arity = static_cast<std::size_t>(arity);
    return u;
}

Tuple UniversalGeneratorTerm::witness(const ElementSet& seed, Element target) const {
    if (set_contains(seed, target)) return Tuple(arity, target);
    std::size_t which = factors.size();
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (factors[i].seed == seed && factors[i].target == target) {
            which = i;
            break;
        }
    }
    if (which == factors.size())
        throw InvalidInput("universal generator term: target is not generated by the seed");
    // suffix[i] = product of arities of factors i..end
    std::vector<std::size_t> suffix(factors.size() + 1, 1);
    for (std::size_t i = factors.size(); i-- > 0;) suffix[i] = suffix[i + 1] * factors[i].arity;
    // Innermost part first: the chosen factor sees blockwise-constant arguments
    // (its own witness), every outer factor sees repeated copies.
    const ElementSet& args = factors[which].seed;
    Tuple inner;
    inner.reserve(suffix[which]);
    for (Element a : args)
        for (std::size_t r = 0; r < suffix[which + 1]; ++r) inner.push_back(a);
    for (std::size_t level = which; level-- > 0;) {
        Tuple outer;
        outer.reserve(inner.size() * factors[level].arity);
        for (std::size_t r = 0; r < factors[level].arity; ++r) outer.insert(outer.end(), inner.begin(), inner.end());
        inner = std::move(outer);
    }
    return inner;
}

} // namespace talg
