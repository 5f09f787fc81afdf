// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nestfold.hpp"
#include "test_support.hpp"

#ifndef NESTFOLD_CLI
#error "NESTFOLD_CLI must name the command-line binary"
#endif

using namespace nestfold;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& why) {
        if (!cond && ok) {
            ok = false;
            detail = why;
        }
    }
};

struct Shell {
    int code = -1;
    std::string out;
};

Shell sh(const std::string& args) {
    Shell r;
    const std::string cmd = std::string("\"") + NESTFOLD_CLI + "\" " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf{};
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), p)) r.out.append(buf.data(), n);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string sample(const std::string& n) { return "\"" + test::source_path("samples/" + n) + "\""; }

fs::path fresh_dir(const std::string& tag) {
    fs::path p = fs::temp_directory_path() / ("nestfold-acceptance-" + tag);
    fs::remove_all(p);
    return p;
}

MutualGroup load_group(const std::string& name) {
    return classify(parse_program(test::read_sample(name))).front();
}

std::string squeeze(const std::string& line) {
    std::istringstream in(line);
    std::string w, out;
    while (in >> w) out += (out.empty() ? "" : " ") + w;
    return out;
}

std::vector<std::string> normalized_lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        line = squeeze(line);
        if (!line.empty()) out.push_back(line);
    }
    return out;
}

/// True when the normalized reference lines occur as a contiguous run.
bool contains_block(const std::vector<std::string>& hay, const std::vector<std::string>& block) {
    if (block.empty() || block.size() > hay.size()) return false;
    for (std::size_t k = 0; k + block.size() <= hay.size(); ++k)
        if (std::equal(block.begin(), block.end(), hay.begin() + static_cast<std::ptrdiff_t>(k))) return true;
    return false;
}

// Reference listings, transcribed with l for the script-ell, a backslash for
// lambda and `forall` for the universal quantifier.
struct Listing {
    const char* name;
    const char* text;
};

const std::vector<Listing>& bush_listings() {
    static const std::vector<Listing> ls = {
        {"NTimes", R"(NTimes : (n : Nat) -> (b : Set -> Set) -> Set -> Set
NTimes zero b a = a
NTimes (succ n) b a = b (NTimes n b a))"},
        {"nmap", R"(nmap : forall {a b : Set} -> (n : Nat) -> (a -> b) ->
       NTimes n Bush a -> NTimes n Bush b
nmap {a} {b} n f l =
  nfold (\ n -> NTimes n Bush b) (\ n -> leaf) (\ n -> cons) a f n l)"},
        {"nfold", R"(nfold : (p : Nat -> Set) ->
        (l : (n : Nat) -> p (succ n)) ->
        (c : (n : Nat) -> p n -> p (succ (succ n)) -> p (succ n)) ->
        (a : Set) -> (z : a -> p zero) ->
        (n : Nat) -> NTimes n Bush a -> p n
nfold p l c a z zero x = z x
nfold p l c a z (succ n) leaf = l n
nfold p l c a z (succ n) (cons x xs) =
  c n (nfold p l c a z n x) (nfold p l c a z (succ (succ n)) xs))"},
        {"ind", R"(ind : forall {a : Set} -> {p : (n : Nat) -> NTimes n Bush a -> Set} ->
      (base : (x : a) -> p zero x) ->
      (l : (n : Nat) -> p (succ n) leaf) ->
      (c : (n : Nat) -> (x : NTimes n Bush a) ->
        (xs : NTimes (succ (succ n)) Bush a) ->
        p n x -> p (succ (succ n)) xs -> p (succ n) (cons x xs)) ->
      (n : Nat) -> (xs : NTimes n Bush a) -> p n xs
ind base l c zero xs = base xs
ind base l c (succ n) leaf = l n
ind base l c (succ n) (cons x xs) =
  c n x xs (ind base l c n x) (ind base l c (succ (succ n)) xs))"},
        {"hfold", R"(hfold : (b : Set -> Set) ->
        (l : (a : Set) -> b a) ->
        (c : (a : Set) -> a -> b (b a) -> b a) ->
        (a : Set) -> Bush a -> b a
hfold b l c a x =
  nfold (\ n -> NTimes n b a) (\ n -> l (NTimes n b a))
    (\ n -> c (NTimes n b a)) a (\ x -> x) 1 x)"},
        {"PS", R"(PS : (p : Nat -> Set) -> Set -> Set
PS p A = (n : Nat) -> (A -> p n) -> p (succ n))"},
        {"PS-to-P", R"(PS-to-P : (p : Nat -> Set) -> (a : Set) -> (z : a -> p zero) ->
          (n : Nat) -> NTimes n (PS p) a -> p n
PS-to-P p a z zero x = z x
PS-to-P p a z (succ n) hyp = hyp n ih
  where
    ih : NTimes n (PS p) a -> p n
    ih = PS-to-P p a z n)"},
        {"fold-PS", R"(fold-PS : (p : Nat -> Set) ->
         (l : (n : Nat) -> p (succ n)) ->
         (c : (n : Nat) -> p n -> p (succ (succ n)) -> p (succ n)) ->
         (a : Set) -> Bush a -> PS p a
fold-PS p l c =
  hfold (PS p) (\ a n tr -> l n)
    (\ a x xs n tr -> c n (tr x) (xs (succ n) (\ f -> f n tr))))"},
        {"liftNTimes", R"(liftNTimes : (b c : Set -> Set) ->
             (forall x y -> (x -> y) -> (b x -> b y)) ->
             (n : Nat) -> (forall a -> b a -> c a) ->
             (a : Set) -> NTimes n b a -> NTimes n c a
liftNTimes b c m zero f a x = x
liftNTimes b c m (succ n) f a x =
  f (NTimes n c a)
    (m (NTimes n b a) (NTimes n c a) (liftNTimes b c m n f a) x))"},
        {"nfold'", R"(nfold' : (p : Nat -> Set) ->
         (l : (n : Nat) -> p (succ n)) ->
         (c : (n : Nat) -> p n -> p (succ (succ n)) -> p (succ n)) ->
         (a : Set) -> (z : a -> p zero) ->
         (n : Nat) -> NTimes n Bush a -> p n
nfold' p l c a z n x = PS-to-P p a z n (lift n x)
  where
    lift : (n : Nat) -> NTimes n Bush a -> NTimes n (PS p) a
    lift n x =
      liftNTimes Bush (PS p) (\ a b -> hmap) n (fold-PS p l c) a x)"},
    };
    return ls;
}

const char* kBobDylanIndex = R"(data BobDylanIndex : Set where
  varA : BobDylanIndex
  varB : BobDylanIndex
  BobC : BobDylanIndex -> BobDylanIndex
  DylanC : BobDylanIndex -> BobDylanIndex -> BobDylanIndex)";

const char* kBobDylanInterp = R"(I : (Set -> Set) -> (Set -> Set -> Set) -> Set -> Set -> BobDylanIndex -> Set
I bob dylan a b varA = a
I bob dylan a b varB = b
I bob dylan a b (BobC expr) = bob (I bob dylan a b expr)
I bob dylan a b (DylanC expr1 expr2) = dylan (I bob dylan a b expr1) (I bob dylan a b expr2))";

const char* kHfoldBobSig = R"(hfold-bob : (bob : Set -> Set) ->
      (dylan : Set -> Set -> Set) ->
      (rob : forall a -> a -> bob a) ->
      (zim : forall a -> dylan (bob (dylan a (bob a))) (bob a) -> bob (dylan a a) -> bob a) ->
      (dul : forall a b -> bob a -> bob b -> dylan a b) ->
      (min : forall a b -> dylan (bob a) (bob b) -> dylan a b) ->
      forall a -> Bob a -> bob a)";

const char* kHfoldDylanSig = R"(hfold-dylan : (bob : Set -> Set) ->
      (dylan : Set -> Set -> Set) ->
      (rob : forall a -> a -> bob a) ->
      (zim : forall a -> dylan (bob (dylan a (bob a))) (bob a) -> bob (dylan a a) -> bob a) ->
      (dul : forall a b -> bob a -> bob b -> dylan a b) ->
      (min : forall a b -> dylan (bob a) (bob b) -> dylan a b) ->
      forall a b -> Dylan a b -> dylan a b)";

const char* kNfoldSig = R"(nfold : (p : BobDylanIndex -> Set) ->
        (rob : forall a -> p a -> p (BobC a)) ->
        (zim : forall a -> p (DylanC (BobC (DylanC a (BobC a))) (BobC a))
                      -> p (BobC (DylanC a a)) -> p (BobC a)) ->
        (dul : forall a b -> p (BobC a) -> p (BobC b) -> p (DylanC a b)) ->
        (min : forall a b -> p (DylanC (BobC a) (BobC b)) -> p (DylanC a b)) ->
        (a b : Set) ->
        (baseA : a -> p varA) ->
        (baseB : b -> p varB) ->
        (forall i -> I Bob Dylan a b i -> p i))";

// -- structural comparison of signatures -------------------------------------

std::vector<std::string> tokens(const std::string& text) {
    std::vector<std::string> out;
    std::size_t k = 0;
    auto ident = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '\'' || c == '-' || c == '_'; };
    while (k < text.size()) {
        char c = text[k];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++k;
        } else if (text.compare(k, 2, "->") == 0) {
            out.push_back("->");
            k += 2;
        } else if (std::isalnum(static_cast<unsigned char>(c))) {
            std::size_t j = k;
            while (j < text.size() && ident(text[j]) && text.compare(j, 2, "->") != 0) ++j;
            out.push_back(text.substr(k, j - k));
            k = j;
        } else {
            out.emplace_back(1, c);
            ++k;
        }
    }
    return out;
}

/// Drops parentheses that enclose the whole final codomain; `A -> (B)` and
/// `A -> B` are the same type.
void strip_final_parens(std::vector<std::string>& ts) {
    if (ts.size() < 3 || ts.back() != ")") return;
    int depth = 0;
    for (std::size_t k = ts.size(); k-- > 0;) {
        if (ts[k] == ")") ++depth;
        if (ts[k] == "(") --depth;
        if (depth == 0) {
            if (k > 0 && ts[k - 1] == "->") {
                ts.pop_back();
                ts.erase(ts.begin() + static_cast<std::ptrdiff_t>(k));
            }
            return;
        }
    }
}

std::vector<std::vector<std::string>> top_level_segments(const std::vector<std::string>& ts) {
    std::vector<std::vector<std::string>> out(1);
    int depth = 0;
    for (const auto& t : ts) {
        if (t == "(" || t == "{") ++depth;
        if (t == ")" || t == "}") --depth;
        if (depth == 0 && t == "->") {
            out.emplace_back();
            continue;
        }
        out.back().push_back(t);
    }
    return out;
}

bool renamable(const std::string& t) {
    return std::islower(static_cast<unsigned char>(t[0])) && t != "forall";
}

/// Equal up to a consistent renaming of lower-case names inside each
/// top-level argument of the signature. Type and constructor names, Set and
/// the punctuation must agree exactly.
bool same_shape(const std::string& reference, const std::string& emitted, std::string& why) {
    auto a = tokens(reference), b = tokens(emitted);
    strip_final_parens(a);
    strip_final_parens(b);
    auto sa = top_level_segments(a), sb = top_level_segments(b);
    if (sa.size() != sb.size()) {
        why = "argument count " + std::to_string(sa.size()) + " vs " + std::to_string(sb.size());
        return false;
    }
    for (std::size_t s = 0; s < sa.size(); ++s) {
        if (sa[s].size() != sb[s].size()) {
            why = "argument " + std::to_string(s + 1) + " differs in length";
            return false;
        }
        std::map<std::string, std::string> fwd, back;
        for (std::size_t k = 0; k < sa[s].size(); ++k) {
            const std::string &x = sa[s][k], &y = sb[s][k];
            if (renamable(x) && renamable(y)) {
                auto [i, fresh] = fwd.emplace(x, y);
                auto [j, fresh2] = back.emplace(y, x);
                if (i->second != y || j->second != x) {
                    why = "argument " + std::to_string(s + 1) + ": inconsistent renaming of " + x;
                    return false;
                }
            } else if (x != y) {
                why = "argument " + std::to_string(s + 1) + ": " + x + " vs " + y;
                return false;
            }
        }
    }
    return true;
}

/// The type signature of top-level definition `name` in an emitted module.
std::string signature_of(const std::string& module, const std::string& name) {
    std::istringstream in(module);
    std::string line, out;
    bool on = false;
    while (std::getline(in, line)) {
        if (!on && line.rfind(name + " : ", 0) == 0) {
            on = true;
        } else if (on && (line.empty() || line[0] != ' ')) {
            break;
        }
        if (on) out += line + "\n";
    }
    return out;
}

// -- enumeration shared by criteria 3, 4 and 8 ---------------------------------

struct Case {
    IndexExpr index;
    Value value;
};

std::vector<Case> bush_cases(const MutualGroup& g) {
    Enumerator e(g, std::vector<Value>{Value::nat(0), Value::nat(1), Value::nat(2)});
    std::vector<Case> out;
    for (std::size_t n = 0; n <= 3; ++n)
        for (const auto& v : e.up_to(nat_to_index(n), 7)) out.push_back({nat_to_index(n), v});
    return out;
}

// -- criteria -------------------------------------------------------------------

Verdict golden_bush() {
    Verdict v;
    auto t0 = Clock::now();
    fs::path dir = fresh_dir("bush");
    Shell r = sh("derive " + sample("bush.ndt") + " --nat-index -o \"" + dir.string() + "\"");
    double dt = seconds_since(t0);
    v.require(r.code == 0, "derive exited " + std::to_string(r.code) + ": " + r.out);
    if (!v.ok) return v;
    const std::string got = test::read_file((dir / "Bush.agda").string());
    const std::string golden = test::read_golden("Bush.agda");
    v.require(got == golden, "output differs from golden/Bush.agda");
    auto lines = normalized_lines(golden);
    for (const auto& l : bush_listings())
        v.require(contains_block(lines, normalized_lines(l.text)), std::string("golden ") + l.name + " does not match the reference listing");
    v.require(dt < 1.0, "took " + std::to_string(dt) + " s");
    if (v.ok) v.detail = std::to_string(bush_listings().size()) + " listings audited, " + std::to_string(dt) + " s";
    fs::remove_all(dir);
    return v;
}

Verdict golden_bobdylan() {
    Verdict v;
    auto t0 = Clock::now();
    fs::path dir = fresh_dir("bobdylan");
    Shell r = sh("derive " + sample("bobdylan.ndt") + " -o \"" + dir.string() + "\"");
    double dt = seconds_since(t0);
    v.require(r.code == 0, "derive exited " + std::to_string(r.code) + ": " + r.out);
    if (!v.ok) return v;
    const std::string got = test::read_file((dir / "BobDylan.agda").string());
    v.require(got == test::read_golden("BobDylan.agda"), "output differs from golden/BobDylan.agda");
    auto lines = normalized_lines(got);
    v.require(contains_block(lines, normalized_lines(kBobDylanIndex)), "index declaration differs");
    v.require(contains_block(lines, normalized_lines(kBobDylanInterp)), "interpretation function differs");
    std::string why;
    v.require(same_shape(kNfoldSig, signature_of(got, "nfold"), why), "nfold signature: " + why);
    v.require(same_shape(kHfoldBobSig, signature_of(got, "hfold-bob"), why), "hfold-bob signature: " + why);
    v.require(same_shape(kHfoldDylanSig, signature_of(got, "hfold-dylan"), why), "hfold-dylan signature: " + why);
    v.require(r.out.find("note: skipped PS bridge for BobDylan: PS bridge not derivable for this shape") != std::string::npos,
              "PS bridge skip not reported");
    v.require(got.find("PS-to-P") == std::string::npos, "PS bridge emitted for a mutual group");
    v.require(dt < 1.0, "took " + std::to_string(dt) + " s");
    if (v.ok) v.detail = std::to_string(dt) + " s";
    fs::remove_all(dir);
    return v;
}

Verdict equivalence() {
    Verdict v;
    auto t0 = Clock::now();
    MutualGroup g = load_group("bush.ndt");
    std::set<std::pair<std::string, std::string>> distinct;
    std::size_t failures = 0;
    std::string first;
    for (const auto& c : bush_cases(g))
        for (const auto& alg : catalogue(g)) {
            Result rv = from_value(c.value);
            Result a = eval_nfold(g, alg, c.index, rv), b = eval_nfold_prime(g, alg, c.index, rv);
            distinct.emplace(to_string(g, c.index) + " " + to_string(c.value), alg.name);
            if (!(a == b)) {
                if (!failures) first = to_string(c.value) + " with " + alg.name;
                ++failures;
            }
        }
    double dt = seconds_since(t0);
    v.require(failures == 0, std::to_string(failures) + " mismatches, first " + first);
    v.require(distinct.size() >= 500, "0 mismatches, but only " + std::to_string(distinct.size()) +
                                          " distinct (value, algebra) cases exist in the stated enumeration; 500 required");
    v.require(dt < 60.0, "took " + std::to_string(dt) + " s");
    if (v.ok) v.detail = std::to_string(distinct.size()) + " cases, " + std::to_string(dt) + " s";
    return v;
}

Verdict map_laws() {
    Verdict v;
    auto t0 = Clock::now();
    MutualGroup g = load_group("bush.ndt");
    auto id = [](const Result& x) { return x; };
    std::size_t cases = 0;
    for (const auto& c : bush_cases(g)) {
        ++cases;
        Result rv = from_value(c.value);
        v.require(eval_map(g, {id}, c.index, rv) == rv, "identity fails on " + to_string(c.value));
    }
    const std::vector<std::function<Result(const Result&)>> fs = {
        [](const Result& x) { return Result::nat(x.as_nat() + 1); },
        [](const Result& x) { return Result::nat(2 * x.as_nat() + 3); },
    };
    Enumerator e(g, std::vector<Value>{Value::nat(0), Value::nat(1), Value::nat(2)});
    for (std::size_t total = 0; total <= 4; ++total)
        for (const auto& x : e.up_to(nat_to_index(total), 7))
            for (std::size_t m = 0; m <= total; ++m)
                for (const auto& f : fs) {
                    const std::size_t n = total - m;
                    ++cases;
                    Result rv = from_value(x);
                    Result lhs = eval_map(g, {f}, nat_to_index(total), rv);
                    Result rhs = eval_map(g, {[&](const Result& y) { return eval_map(g, {f}, nat_to_index(n), y); }},
                                          nat_to_index(m), rv);
                    v.require(lhs == rhs, "composition fails at m=" + std::to_string(m) + " n=" + std::to_string(n) +
                                              " on " + to_string(x));
                }
    double dt = seconds_since(t0);
    v.require(dt < 60.0, "took " + std::to_string(dt) + " s");
    if (v.ok) v.detail = std::to_string(cases) + " cases, " + std::to_string(dt) + " s";
    return v;
}

Verdict hfold_conformance() {
    Verdict v;
    MutualGroup g = load_group("bush.ndt");
    Enumerator e(g, std::vector<Value>{Value::nat(0), Value::nat(1), Value::nat(2)});
    const IndexExpr one = nat_to_index(1);
    const auto values = e.up_to(one, 7);
    std::size_t cases = 0;
    for (const auto& name : hfold_catalogue_names()) {
        auto alg = hfold_catalogue_algebra(g, name);
        v.require(alg.has_value(), "missing higher-order algebra " + name);
        if (!alg) continue;
        for (const auto& x : values) {
            ++cases;
            Result rv = from_value(x);
            v.require(observe(*alg, eval_hfold(g, 0, *alg, rv)) == observe(*alg, eval_hfold_direct(g, 0, *alg, rv)),
                      name + ": fold route differs from the direct definition on " + to_string(x));
        }
        ++cases;
        v.require(observe(*alg, eval_hfold(g, 0, *alg, Result::node("leaf"))) == observe(*alg, alg->methods.at("leaf")({})),
                  name + ": hfold on leaf is not the leaf method");
    }
    auto f = [](const Result& x) { return Result::nat(x.as_nat() + 1); };
    auto hmap = [&](std::function<Result(const Result&)> h, const Result& x) { return eval_map(g, {h}, one, x); };
    for (const auto& x : values) {
        if (x.ctor != "cons") continue;
        ++cases;
        Result rv = from_value(x);
        Result rhs = Result::node("cons", {f(rv.kids()[0]), hmap([&](const Result& y) { return hmap(f, y); }, rv.kids()[1])});
        v.require(hmap(f, rv) == rhs, "hmap-cons fails on " + to_string(x));
    }
    if (v.ok) v.detail = std::to_string(cases) + " cases";
    return v;
}

Verdict concrete_figures() {
    Verdict v;
    // Oracles over the literal text: add every numeral; count the top-level
    // entries of the outermost brackets.
    const std::string file = test::read_sample("bush1.ndv");
    const std::string literal = file.substr(file.find('=') + 1);
    std::uint64_t flat_sum = 0;
    std::regex num("[0-9]+");
    for (auto it = std::sregex_iterator(literal.begin(), literal.end(), num); it != std::sregex_iterator(); ++it)
        flat_sum += std::stoull(it->str());
    std::size_t spine = 0;
    int depth = 0;
    bool item = false;
    for (char ch : literal) {
        if (ch == '[' && ++depth == 2) item = true;
        if (ch == ']') --depth;
        if (depth == 1 && std::isdigit(static_cast<unsigned char>(ch))) item = true;
        if ((ch == ',' && depth == 1) || (ch == ']' && depth == 0)) {
            spine += item;
            item = false;
        }
    }
    v.require(flat_sum == 34, "flatten oracle gives " + std::to_string(flat_sum));
    v.require(spine == 4, "spine oracle gives " + std::to_string(spine));
    const std::string base = "eval " + sample("bush.ndt") + " " + sample("bush1.ndv");
    auto check = [&](const std::string& extra, std::uint64_t want) {
        Shell r = sh(base + extra);
        v.require(r.code == 0 && r.out == std::to_string(want) + "\n", "`eval" + extra + "` printed " + r.out);
    };
    check(" --algebra sum", flat_sum);
    check(" --algebra length", spine);
    check(" --algebra sumAux", flat_sum);
    if (v.ok) v.detail = "sum 34, length 4, sumAux 34";
    return v;
}

Verdict degenerate_list() {
    Verdict v;
    MutualGroup g = load_group("list.ndt");
    Enumerator e(g, std::vector<Value>{Value::nat(0), Value::nat(1), Value::nat(2)});
    const IndexExpr a = decl_index(g, 0);
    const auto lists = e.up_to(a, 7);  // nil plus up to six conses
    std::size_t cases = 0;
    for (const auto& alg : catalogue(g)) {
        const auto& nil_m = alg.methods.at("nil");
        const auto& cons_m = alg.methods.at("cons");
        const auto& base = alg.bases.at(0);
        std::function<Result(const Value&)> fold_list = [&](const Value& l) -> Result {
            if (l.ctor == "nil") return nil_m({IndexExpr::var(0)}, {});
            return cons_m({IndexExpr::var(0)}, {base(from_value(l.args[0])), fold_list(l.args[1])});
        };
        for (const auto& l : lists) {
            ++cases;
            v.require(eval_nfold(g, alg, a, l) == fold_list(l), alg.name + " differs on " + to_string(l));
        }
    }
    v.require(lists.size() == 1093, std::to_string(lists.size()) + " lists enumerated, 1093 expected");
    v.require(lists.size() >= 1000, "fewer than 1000 lists");
    if (v.ok) v.detail = std::to_string(lists.size()) + " lists, " + std::to_string(cases) + " cases";
    return v;
}

Verdict termination() {
    Verdict v;
    std::size_t defs = 0, runs = 0;
    for (const char* s : {"bush.ndt", "list.ndt", "bobdylan.ndt"}) {
        MutualGroup g = load_group(s);
        for (bool nat : {false, true})
            for (const auto& d : derive_all(g, {nat}).defs) {
                ++defs;
                Certificate c = check_structural(d);
                v.require(c.ok, std::string(s) + " " + d.name + ": " + c.detail);
            }
        Enumerator e(g, std::vector<Value>{Value::nat(0), Value::nat(1), Value::nat(2)});
        for (const auto& i : suite_indices(g, 3))
            for (const auto& x : e.up_to(i, 7))
                for (const auto& alg : catalogue(g)) {
                    EvalStats a, b;
                    eval_nfold(g, alg, i, x, &a);
                    eval_ind(g, lift_algebra(alg), i, from_value(x), &b);
                    runs += 2;
                    v.require(a.con_calls <= value_size(x) && b.con_calls <= value_size(x),
                              std::string(s) + ": " + std::to_string(std::max(a.con_calls, b.con_calls)) +
                                  " calls on a value of size " + std::to_string(value_size(x)));
                }
    }
    if (v.ok) v.detail = std::to_string(defs) + " definitions certified, " + std::to_string(runs) + " bounded runs";
    return v;
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
        {"golden emission, Bush", golden_bush},
        {"golden emission, Bob/Dylan", golden_bobdylan},
        {"nfold equals nfold' on all small bushes", equivalence},
        {"map identity and composition", map_laws},
        {"hfold conformance", hfold_conformance},
        {"concrete figures for bush1", concrete_figures},
        {"List fold agrees with foldList", degenerate_list},
        {"termination certificate and call bound", termination},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Verdict v;
        try {
            v = criteria[k].second();
        } catch (const std::exception& e) {
            v.ok = false;
            v.detail = std::string("exception: ") + e.what();
        }
        failed += !v.ok;
        std::cout << (v.ok ? "PASS" : "FAIL") << " " << k + 1 << " " << criteria[k].first;
        if (!v.detail.empty()) std::cout << ": " << v.detail;
        std::cout << "\n";
    }
    return failed ? 1 : 0;
}
