#include "qlh/atom.hpp"

#include <algorithm>

#include "qlh/expr.hpp"

namespace qlh {

Registry& Registry::instance() {
    static Registry r;
    return r;
}

Registry::Registry() {
    auto ind = [&](const char* n) {
        Atom a;
        a.name = n;
        a.kind = AtomKind::Independent;
        return add_locked(a);
    };
    auto dep = [&](const char* n) {
        Atom a;
        a.name = n;
        a.kind = AtomKind::Dependent;
        return add_locked(a);
    };
    auto jet = [&](const char* n) {
        Atom a;
        a.name = n;
        a.kind = AtomKind::Jet;
        return add_locked(a);
    };

    std_.x = ind("x");
    std_.t = ind("t");
    std_.u = dep("u");
    std_.v = dep("v");
    std_.u_x = jet("u_x");
    std_.u_t = jet("u_t");
    std_.u_xx = jet("u_xx");
    std_.u_xt = jet("u_xt");
    std_.u_tt = jet("u_tt");
    std_.v_x = jet("v_x");
    std_.v_t = jet("v_t");

    {
        Atom a;
        a.name = "exp(x)";
        a.kind = AtomKind::Transcendental;
        a.inner = 0;
        inners_.push_back(Expression::atom(std_.x));
        std_.exp_x = add_locked(a);
    }

    auto afun = [&](const char* n, std::vector<AtomId> deps) {
        Atom a;
        a.name = n;
        a.base = n;
        a.kind = AtomKind::AbstractFunc;
        a.deps = std::move(deps);
        a.multi_index.assign(a.deps.size(), 0);
        return add_locked(a);
    };

    const std::vector<AtomId> dx{std_.x};
    const std::vector<AtomId> dxu{std_.x, std_.u};
    const std::vector<AtomId> dxt{std_.x, std_.t};
    const std::vector<AtomId> dxtuv{std_.x, std_.t, std_.u, std_.v};

    // Pre-spawn the partials used throughout so atom ids are call-order
    // independent (and the monomial order with them).
    std_.f = afun("f", dx);
    partial(std_.f, std_.x);                       // f_x
    partial(partial(std_.f, std_.x), std_.x);      // f_xx
    std_.g = afun("g", dxu);
    partial(std_.g, std_.x);
    partial(std_.g, std_.u);
    partial(partial(std_.g, std_.x), std_.x);
    partial(partial(std_.g, std_.x), std_.u);
    partial(partial(std_.g, std_.u), std_.u);
    std_.h = afun("h", dxu);
    partial(std_.h, std_.x);
    partial(std_.h, std_.u);
    partial(partial(std_.h, std_.x), std_.x);
    partial(partial(std_.h, std_.x), std_.u);
    partial(partial(std_.h, std_.u), std_.u);

    for (const char* n : {"xi", "tau", "phi", "eta"}) {
        AtomId base = afun(n, dxtuv);
        for (AtomId d : dxtuv) partial(base, d);
        if (std::string(n) == "xi") std_.xi = base;
        if (std::string(n) == "tau") std_.tau = base;
        if (std::string(n) == "phi") std_.phi = base;
        if (std::string(n) == "eta") std_.eta = base;
    }

    std_.alpha = afun("alpha", dxt);
    {
        AtomId ax = partial(std_.alpha, std_.x);
        AtomId at = partial(std_.alpha, std_.t);
        partial(ax, std_.x);
        partial(ax, std_.t);
        partial(at, std_.t);
    }
    std_.beta = afun("beta", dxt);
    partial(std_.beta, std_.x);
    partial(std_.beta, std_.t);
    std_.gamma = afun("gamma", dxt);
    partial(std_.gamma, std_.x);
    partial(std_.gamma, std_.t);

    {
        Atom a;
        a.name = "F";
        a.base = "F";
        a.kind = AtomKind::AbstractFunc;
        a.deps = dx;
        a.multi_index = {0};
        a.prime_names = true;
        std_.F = add_locked(a);
    }
    std_.F1 = partial(std_.F, std_.x);
    std_.F2 = partial(std_.F1, std_.x);
}

AtomId Registry::add(Atom a) {
    std::lock_guard lk(mu_);
    return add_locked(std::move(a));
}

AtomId Registry::add_locked(Atom a) {
    auto it = by_name_.find(a.name);
    if (it != by_name_.end()) return it->second;
    AtomId id = static_cast<AtomId>(atoms_.size());
    by_name_.emplace(a.name, id);
    atoms_.push_back(std::move(a));
    return id;
}

AtomId Registry::param(const std::string& name) {
    if (name == "i" || name == "exp")
        throw DomainError("'" + name + "' is reserved and cannot name a parameter");
    {
        std::lock_guard lk(mu_);
        auto it = by_name_.find(name);
        if (it != by_name_.end()) {
            if (atoms_[it->second].kind != AtomKind::Parameter)
                throw DomainError("atom '" + name + "' already registered with a different kind");
            return it->second;
        }
    }
    Atom a;
    a.name = name;
    a.kind = AtomKind::Parameter;
    return add(std::move(a));
}

AtomId Registry::abstract_func(const std::string& base, const std::vector<AtomId>& deps,
                               bool prime_names) {
    {
        std::lock_guard lk(mu_);
        auto it = by_name_.find(base);
        if (it != by_name_.end()) {
            if (atoms_[it->second].kind != AtomKind::AbstractFunc)
                throw DomainError("atom '" + base + "' already registered with a different kind");
            return it->second;
        }
    }
    Atom a;
    a.name = base;
    a.base = base;
    a.kind = AtomKind::AbstractFunc;
    a.deps = deps;
    a.multi_index.assign(deps.size(), 0);
    a.prime_names = prime_names;
    return add(std::move(a));
}

AtomId Registry::exp_of(const Expression& inner) {
    std::string name = "exp(" + inner.str() + ")";
    {
        std::lock_guard lk(mu_);
        auto it = by_name_.find(name);
        if (it != by_name_.end()) return it->second;
        Atom a;
        a.name = name;
        a.kind = AtomKind::Transcendental;
        a.inner = static_cast<std::int32_t>(inners_.size());
        inners_.push_back(inner);
        return add_locked(std::move(a));
    }
}

AtomId Registry::partial(AtomId fn, AtomId dir) {
    Atom base;
    {
        std::lock_guard lk(mu_);
        base = atoms_.at(fn);
    }
    if (base.kind != AtomKind::AbstractFunc)
        throw DomainError("partial() requires an abstract-function atom");
    auto pos = std::find(base.deps.begin(), base.deps.end(), dir);
    if (pos == base.deps.end())
        throw DomainError("atom '" + base.name + "' does not depend on direction '" +
                          atom(dir).name + "'");
    Atom p = base;
    p.multi_index[static_cast<std::size_t>(pos - base.deps.begin())]++;
    if (p.prime_names) {
        int order = 0;
        for (auto k : p.multi_index) order += k;
        p.name = p.base + std::string(static_cast<std::size_t>(order), '\'');
    } else {
        std::string suffix;
        for (std::size_t k = 0; k < p.deps.size(); ++k)
            suffix += std::string(p.multi_index[k], atom(p.deps[k]).name[0]);
        p.name = p.base + "_" + suffix;
    }
    return add(std::move(p));
}

const Atom& Registry::atom(AtomId id) const {
    std::lock_guard lk(mu_);
    return atoms_.at(id);
}

std::optional<AtomId> Registry::find(const std::string& name) const {
    std::lock_guard lk(mu_);
    auto it = by_name_.find(name);
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

AtomId Registry::named(const std::string& name) const {
    auto id = find(name);
    if (!id) throw DomainError("unknown atom '" + name + "'");
    return *id;
}

Expression Registry::derivative(AtomId a, AtomId dir) {
    if (a == dir) return Expression(1);
    AtomKind kind;
    {
        std::lock_guard lk(mu_);
        kind = atoms_.at(a).kind;
    }
    switch (kind) {
        case AtomKind::Independent:
        case AtomKind::Dependent:
        case AtomKind::Jet:
        case AtomKind::Parameter:
            return Expression(0);
        case AtomKind::AbstractFunc: {
            const Atom at = atom(a);
            if (std::find(at.deps.begin(), at.deps.end(), dir) == at.deps.end())
                return Expression(0);
            return Expression::atom(partial(a, dir));
        }
        case AtomKind::Transcendental: {
            Expression inner = inner_of(a);
            Expression di = diff_partial(inner, dir);
            if (di.is_zero()) return Expression(0);
            return di * Expression::atom(a);
        }
    }
    throw DomainError("unreachable atom kind");
}

const Expression& Registry::inner_of(AtomId transcendental) const {
    std::lock_guard lk(mu_);
    const Atom& a = atoms_.at(transcendental);
    if (a.kind != AtomKind::Transcendental || a.inner < 0)
        throw DomainError("atom '" + a.name + "' is not transcendental");
    return inners_.at(static_cast<std::size_t>(a.inner));
}

std::size_t Registry::size() const {
    std::lock_guard lk(mu_);
    return atoms_.size();
}

} // namespace qlh
