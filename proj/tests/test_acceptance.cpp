// Acceptance criteria for the whole pipeline. Each TEST_CASE prints one
// "[A_] PASS/FAIL" line with its runtime so the suite doubles as a
// checklist. Budgets: A1/A2 < 1 s, A3 < 60 s, A4 < 5 s.

#include <catch2/catch_amalgamated.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "dscribe/project.hpp"
#include "fixture.hpp"

using namespace dscribe;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Criterion {
    const char* id;
    const char* what;
    Clock::time_point start = Clock::now();
    bool ok = false;
    double limit_s;

    Criterion(const char* id, const char* what, double limit_s)
        : id(id), what(what), limit_s(limit_s) {}
    double elapsed() const {
        return std::chrono::duration<double>(Clock::now() - start).count();
    }
    ~Criterion() {
        double secs = elapsed();
        bool in_budget = secs < limit_s;
        std::cout << "[" << id << "] " << ((ok && in_budget) ? "PASS" : "FAIL")
                  << " (" << secs << " s, budget " << limit_s << " s): " << what
                  << std::endl;
    }
};

fs::path temp_dir(const std::string& tag) {
    fs::path p = fs::temp_directory_path() /
                 ("dscribe-acc-" + tag + "-" + std::to_string(::getpid()));
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t hash_tree(const fs::path& root) {
    std::vector<std::string> entries;
    if (fs::exists(root))
        for (const auto& e : fs::recursive_directory_iterator(root)) {
            std::string line = e.path().lexically_relative(root).generic_string();
            if (e.is_regular_file()) line += "\x01" + slurp(e.path());
            entries.push_back(line);
        }
    std::sort(entries.begin(), entries.end());
    std::size_t h = 14695981039346656037ull;
    for (const auto& s : entries)
        for (unsigned char c : s) h = (h ^ c) * 1099511628211ull;
    return h;
}

Fragment frag(const Statement& cond, const Statement& conseq) {
    Fragment f;
    f.condition = cond;
    f.consequence = conseq;
    f.focal = {"p.C", "m", {}};
    return f;
}

using PairKey = std::pair<std::string, std::string>;

// Expand aggregates back into (condition, consequence) pairs and compare
// with the deduplicated input pair set.
bool expansion_matches(const std::vector<Fragment>& input) {
    std::set<PairKey> want;
    for (const Fragment& f : input)
        want.emplace(doc_detail::statement_key(*f.condition),
                     doc_detail::statement_key(*f.consequence));
    std::set<PairKey> got;
    for (const AggregatedFragment& agg : aggregate(input)) {
        if (!agg.freeform_lines.empty()) return false;
        for (const Statement& c : agg.conditions)
            for (const Statement& q : agg.consequences) {
                if (!got.emplace(doc_detail::statement_key(c),
                                 doc_detail::statement_key(q)).second)
                    return false;  // a pair produced twice
            }
    }
    return got == want;
}

std::vector<std::string> rendered_lines(const std::vector<Fragment>& input) {
    std::vector<std::string> lines;
    for (const auto& agg : aggregate(input)) lines.push_back(render(agg));
    return lines;
}

}  // namespace

TEST_CASE("A1: example template end to end") {
    Criterion c("A1", "one invocation yields one oracle-exact test file and one "
                      "@dscribe line", 1.0);
    fs::path root = temp_dir("a1");
    fs::copy(DSCRIBE_REPO_DIR "/tests/data/buffer", root,
             fs::copy_options::recursive | fs::copy_options::overwrite_existing);
    ProjectConfig cfg = load_config(root / "dscribe.json");
    RunReport report = cmd_generate(cfg);
    REQUIRE_FALSE(report.has_errors());

    int java_files = 0;
    for (const auto& e : fs::recursive_directory_iterator(root / "generated"))
        if (e.is_regular_file() && e.path().extension() == ".java") ++java_files;
    REQUIRE(java_files == 1);

    const std::string oracle =
        "package com.example;\n"
        "\n"
        "// Generated by dscribe. Do not edit; regenerate instead.\n"
        "public class BufferDScribeTest {\n"
        "\n"
        "    // dscribe: Example#com.example.Buffer.pop()\n"
        "    @Test\n"
        "    public void testpop_isEmpty() {\n"
        "        Buffer instance = createEmpty();\n"
        "        try {\n"
        "            instance.pop();\n"
        "            fail();\n"
        "        } catch (java.lang.IllegalStateException e) {}\n"
        "    }\n"
        "}\n";
    REQUIRE(slurp(root / "generated/com/example/BufferDScribeTest.java") == oracle);

    std::string src = slurp(root / "src/com/example/Buffer.java");
    std::size_t first = src.find("@dscribe");
    REQUIRE(first != std::string::npos);
    REQUIRE(src.find("@dscribe", first + 1) == std::string::npos);
    REQUIRE(src.find("@dscribe pop throws an exception of type "
                     "java.lang.IllegalStateException when isEmpty().") !=
            std::string::npos);

    fs::remove_all(root);
    c.ok = true;
    REQUIRE(c.elapsed() < 1.0);
}

TEST_CASE("A2: condition aggregation renders the documented line") {
    Criterion c("A2", "two structured invocations merge into a single "
                      "or-joined @dscribe line", 1.0);
    const char* tpl =
        "/**\n"
        " * @cond $a$ | is | $what$\n"
        " * @conseq the result | is | NaN\n"
        " */\n"
        "@Template(\"LogSpecial\")\n"
        "@Types($a$=FIELD, $what$=EXPR)\n"
        "@Test\n"
        "public void test$method$_$a$_$what$() {\n    check($a$, $what$);\n}\n";
    const char* src =
        "package math;\npublic class Calc {\n"
        "    public double log(double a) { return 0.0; }\n}\n";
    testing::Harness h({tpl}, {src});
    std::vector<Fragment> frags = {
        instantiate_fragment(h.resolve("LogSpecial", "math.Calc", "log",
                                       {{"a", "a"}, {"what", "NaN"}}, {"double"})),
        instantiate_fragment(h.resolve("LogSpecial", "math.Calc", "log",
                                       {{"a", "a"}, {"what", "negative"}},
                                       {"double"}))};
    auto lines = rendered_lines(frags);
    REQUIRE(lines.size() == 1);
    REQUIRE(lines[0] == "@dscribe If a is NaN or negative, then the result is NaN.");
    c.ok = true;
    REQUIRE(c.elapsed() < 1.0);
}

TEST_CASE("A3: aggregation equals the expansion oracle") {
    Criterion c("A3", "expansion of aggregate() equals the deduplicated input "
                      "pair set, order-independently", 60.0);
    // Statement alphabet: 3 subjects x 2 relations x 3 objects.
    std::vector<Statement> alphabet;
    for (const char* s : {"a", "b", "the result"})
        for (const char* r : {"is", "has"})
            for (const char* o : {"NaN", "negative", "no effect"})
                alphabet.push_back(Statement{true, s, r, o, ""});
    std::vector<Fragment> all;  // 18 x 18 = 324 possible fragments
    for (const auto& cond : alphabet)
        for (const auto& conseq : alphabet) all.push_back(frag(cond, conseq));

    auto check_set = [&](const std::vector<Fragment>& set) {
        if (!expansion_matches(set)) {
            INFO("failing set of size " << set.size());
            for (const auto& f : set)
                UNSCOPED_INFO(doc_detail::render_singleton(f));
            REQUIRE(false);
        }
    };

    // Exhaustive for sizes 0..2 over the full fragment space, plus the
    // reversed order of every pair.
    check_set({});
    for (std::size_t i = 0; i < all.size(); ++i) check_set({all[i]});
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            check_set({all[i], all[j]});
            check_set({all[j], all[i]});
        }

    // Exhaustive for sizes 3..6 over a 20-fragment pool dense in shared
    // conditions/consequences (first 2 subjects, both relations, first
    // object on each side plus crossovers).
    std::vector<Fragment> pool;
    for (std::size_t i = 0; i < all.size() && pool.size() < 20; i += 17)
        pool.push_back(all[i]);
    for (std::size_t i = 1; i < all.size() && pool.size() < 20; i += 19)
        pool.push_back(all[i]);
    std::vector<Fragment> subset;
    auto recurse = [&](auto&& self, std::size_t from, std::size_t want) -> void {
        if (want == 0) {
            check_set(subset);
            return;
        }
        for (std::size_t i = from; i + want <= pool.size() + 1 && i < pool.size();
             ++i) {
            subset.push_back(pool[i]);
            self(self, i + 1, want - 1);
            subset.pop_back();
        }
    };
    for (std::size_t k = 3; k <= 6; ++k) recurse(recurse, 0, k);

    // Randomized sets of size 3..6 over the full space, each also checked
    // for order independence (shuffled input must render identically).
    std::mt19937 rng(20260826);
    for (int iter = 0; iter < 20000; ++iter) {
        std::size_t k = 3 + rng() % 4;
        std::vector<Fragment> set;
        std::set<std::size_t> seen;
        while (set.size() < k) {
            std::size_t i = rng() % all.size();
            if (seen.insert(i).second) set.push_back(all[i]);
        }
        check_set(set);
        auto base = rendered_lines(set);
        std::shuffle(set.begin(), set.end(), rng);
        if (rendered_lines(set) != base) {
            INFO("order dependence at iteration " << iter);
            REQUIRE(false);
        }
    }
    c.ok = true;
    REQUIRE(c.elapsed() < 60.0);
}

TEST_CASE("A4: regeneration fixpoint on a 20-file project") {
    Criterion c("A4", "second generate touches 0 files; clean restores all "
                      "sources byte-exactly", 5.0);
    fs::path root = temp_dir("a4");
    fs::create_directories(root / "src");
    fs::create_directories(root / "templates");
    fs::create_directories(root / "invocations");

    std::ofstream(root / "templates/Example.java")
        << slurp(DSCRIBE_REPO_DIR "/tests/data/buffer/templates/Example.java");
    std::ofstream(root / "templates/Result.java")
        << "/**\n"
           " * @cond $arg$ | is | $bad$\n"
           " * @conseq the result | is | $out$\n"
           " */\n"
           "@Template(\"Result\")\n"
           "@Types($arg$=FIELD, $bad$=EXPR, $out$=EXPR)\n"
           "@Test\n"
           "public void test$method$Result_$bad$() {\n"
           "    assertEquals($out$, new $class$().$method$($bad$));\n"
           "}\n";
    std::ofstream(root / "templates/Plain.java")
        << "/**\n"
           " * calling $method$ twice is idempotent\n"
           " */\n"
           "@Template(\"Plain\")\n"
           "@Test\n"
           "public void test$method$Idempotent() {\n"
           "    $class$ x = new $class$();\n"
           "    x.$method$();\n"
           "    x.$method$();\n"
           "}\n";

    // 20 source files across 4 packages, some with existing comments.
    for (int i = 0; i < 20; ++i) {
        std::string pkg = "app.p" + std::to_string(i % 4);
        fs::path dir = root / "src" / ("p" + std::to_string(i % 4));
        fs::create_directories(dir);
        std::ostringstream src;
        src << "package " << pkg << ";\n\npublic class Widget" << i << " {\n";
        if (i % 3 == 0)
            src << "    /**\n     * Hand-written summary " << i << ".\n     */\n";
        src << "    public void reset() {\n        state = 0;\n    }\n\n"
            << "    public int step(int n) {\n        return n + 1;\n    }\n\n"
            << "    public static Widget" << i << " make() {\n"
            << "        return new Widget" << i << "();\n    }\n"
            << "    int state;\n}\n";
        std::ofstream(dir / ("Widget" + std::to_string(i) + ".java")) << src.str();
    }

    nlohmann::ordered_json doc;
    doc["version"] = 1;
    doc["invocations"] = nlohmann::ordered_json::array();
    for (int i = 0; i < 20; ++i) {
        std::string cls = "app.p" + std::to_string(i % 4) + ".Widget" + std::to_string(i);
        doc["invocations"].push_back(
            {{"template", "Example"}, {"class", cls}, {"method", "reset"},
             {"params", nlohmann::json::array()},
             {"values", {{"ex", "java.lang.IllegalStateException"},
                         {"state", "state > " + std::to_string(i)},
                         {"factory", "make"}}}});
        if (i % 2 == 0)
            doc["invocations"].push_back(
                {{"template", "Result"}, {"class", cls}, {"method", "step"},
                 {"params", {"int"}},
                 {"values", {{"arg", "n"}, {"bad", std::to_string(-i)},
                             {"out", std::to_string(1 - i)}}}});
        if (i % 4 == 0)
            doc["invocations"].push_back(
                {{"template", "Plain"}, {"class", cls}, {"method", "reset"},
                 {"params", nlohmann::json::array()},
                 {"values", nlohmann::json::object()}});
    }
    REQUIRE(doc["invocations"].size() >= 30);
    std::ofstream(root / "invocations/all.json") << doc.dump(2) << "\n";
    std::ofstream(root / "dscribe.json") << R"({
      "source_roots": ["src"],
      "templates_dir": "templates",
      "invocations": ["invocations/*.json"],
      "gen_tests_dir": "generated"
    })";

    std::map<fs::path, std::string> originals;
    for (const auto& e : fs::recursive_directory_iterator(root / "src"))
        if (e.is_regular_file()) originals[e.path()] = slurp(e.path());

    ProjectConfig cfg = load_config(root / "dscribe.json");
    RunReport first = cmd_generate(cfg);
    REQUIRE_FALSE(first.has_errors());
    REQUIRE(first.invocations_valid >= 30);
    REQUIRE(first.files_touched > 0);

    RunReport second = cmd_generate(cfg);
    REQUIRE_FALSE(second.has_errors());
    REQUIRE(second.files_touched == 0);

    RunReport cleaned = cmd_clean(cfg);
    REQUIRE_FALSE(cleaned.has_errors());
    for (const auto& [path, text] : originals) REQUIRE(slurp(path) == text);
    for (const auto& e : fs::recursive_directory_iterator(root / "generated"))
        REQUIRE(e.path().filename() == kGeneratedFolderMarker);

    fs::remove_all(root);
    c.ok = true;
    REQUIRE(c.elapsed() < 5.0);
}

TEST_CASE("A5: serialization round-trips 500 random invocation lists") {
    Criterion c("A5", "load(serialize(L)) == L and serialize is a fixpoint",
                60.0);
    std::mt19937 rng(1);
    auto word = [&](const char* p) {
        std::string w = p;
        int n = 1 + static_cast<int>(rng() % 6);
        for (int i = 0; i < n; ++i)
            w += static_cast<char>((rng() % 2 ? 'a' : 'A') + rng() % 26);
        return w;
    };
    for (int iter = 0; iter < 500; ++iter) {
        std::vector<Invocation> list;
        unsigned n = rng() % 10;
        for (unsigned i = 0; i < n; ++i) {
            Invocation inv;
            inv.template_name = word("T");
            inv.signature.class_name = word("pkg") + "." + word("C");
            inv.signature.method_name = word("m");
            for (unsigned j = 0, k = rng() % 3; j < k; ++j)
                inv.signature.param_types.push_back(word("Arg"));
            for (unsigned j = 0, k = rng() % 4; j < k; ++j)
                inv.values[word("p")] = word("val") + " + \"x\\\"y\" != null";
            list.push_back(inv);
        }
        std::string text = serialize_invocations(list);
        std::vector<Invocation> back = load_invocations(text);
        REQUIRE(back == list);
        REQUIRE(serialize_invocations(back) == text);
    }
    c.ok = true;
}

TEST_CASE("A6: expression corpus and exception checks are exact") {
    Criterion c("A6", "0 corpus misclassifications; EXCEPTION accepts exactly "
                      "the throwable closure of the shipped index", 60.0);
    auto lines = [](const char* path) {
        std::ifstream in(path);
        REQUIRE(in.good());
        std::vector<std::string> out;
        std::string line;
        while (std::getline(in, line))
            if (!line.empty() && line[0] != '#') out.push_back(line);
        return out;
    };
    auto accepts = [](const std::string& s) {
        try {
            expr::check_expression(s);
            return true;
        } catch (const Error&) {
            return false;
        }
    };
    auto accept = lines(DSCRIBE_REPO_DIR "/tests/data/expr_accept.txt");
    auto reject = lines(DSCRIBE_REPO_DIR "/tests/data/expr_reject.txt");
    REQUIRE(accept.size() >= 40);
    REQUIRE(reject.size() >= 40);
    int misclassified = 0;
    for (const auto& s : accept)
        if (!accepts(s)) ++misclassified;
    for (const auto& s : reject)
        if (accepts(s)) ++misclassified;
    REQUIRE(misclassified == 0);

    // Independent throwable oracle: walk the raw JSON supertype map.
    auto doc = nlohmann::json::parse(slurp(DSCRIBE_REPO_DIR "/data/known_types.json"));
    std::map<std::string, std::vector<std::string>> supers;
    for (const auto& t : doc["types"])
        supers[t["name"]] = t["supertypes"].get<std::vector<std::string>>();
    auto oracle_throwable = [&](const std::string& name) {
        std::set<std::string> seen;
        std::vector<std::string> work{name};
        while (!work.empty()) {
            std::string cur = work.back();
            work.pop_back();
            if (cur == "java.lang.Throwable") return true;
            if (!seen.insert(cur).second) continue;
            auto it = supers.find(cur);
            if (it != supers.end())
                for (const auto& s : it->second) work.push_back(s);
        }
        return false;
    };

    ClassIndex index =
        build_class_index({}, parse_known_types(slurp(DSCRIBE_REPO_DIR
                                                      "/data/known_types.json")));
    REQUIRE(supers.size() >= 40);
    for (const auto& [name, _] : supers) {
        bool expected = oracle_throwable(name);
        INFO("type: " << name);
        REQUIRE(is_throwable(name, index) == expected);
        bool accepted = true;
        try {
            check_value(PlaceholderType::Exception, name, "p", index);
        } catch (const Error&) {
            accepted = false;
        }
        REQUIRE(accepted == expected);
    }
    c.ok = true;
}

TEST_CASE("A7: the generated-folder guard never deletes user files") {
    Criterion c("A7", "generate against an unmarked non-empty folder fails "
                      "with GuardError and changes nothing", 60.0);
    fs::path root = temp_dir("a7");
    fs::copy(DSCRIBE_REPO_DIR "/tests/data/buffer", root,
             fs::copy_options::recursive | fs::copy_options::overwrite_existing);
    fs::create_directories(root / "generated/com");
    std::ofstream(root / "generated/Notes.java") << "class Notes {}\n";
    std::ofstream(root / "generated/com/Keep.txt") << "precious\n";

    std::size_t before = hash_tree(root / "generated");
    ProjectConfig cfg = load_config(root / "dscribe.json");
    RunReport report = cmd_generate(cfg);
    REQUIRE(report.exit_code() == 1);
    bool guard_seen = false;
    for (const auto& d : report.diagnostics)
        if (d.code == std::string("GuardError")) guard_seen = true;
    REQUIRE(guard_seen);
    REQUIRE(hash_tree(root / "generated") == before);

    fs::remove_all(root);
    c.ok = true;
}
