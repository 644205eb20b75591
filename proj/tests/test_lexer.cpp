#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <regex>

#include "dscribe/lexer.hpp"

using namespace dscribe;

TEST_CASE("tokens carry exact offsets into the input") {
    std::string src = "int x = foo(1, \"a b\") >= 2;";
    LexResult r = lex(src);
    REQUIRE(!r.tokens.empty());
    REQUIRE(r.tokens.back().kind == TokenKind::EndOfFile);
    for (std::size_t i = 0; i + 1 < r.tokens.size(); ++i) {
        const Token& t = r.tokens[i];
        CHECK(src.substr(t.offset, t.text.size()) == t.text);
    }
}

TEST_CASE("multi-char punctuators lex as single tokens") {
    LexResult r = lex("a >= b && c != d ::e ... <<=");
    std::vector<std::string> puncts;
    for (const Token& t : r.tokens)
        if (t.kind == TokenKind::Punct) puncts.push_back(t.text);
    CHECK(puncts == std::vector<std::string>{">=", "&&", "!=", "::", "...", "<<="});
}

TEST_CASE("comments go to the side list and keep their text") {
    std::string src = "int a; // line\n/* block */ int b;";
    LexResult r = lex(src);
    REQUIRE(r.comments.size() == 2);
    CHECK(r.comments[0].is_block == false);
    CHECK(r.comments[1].is_block == true);
    CHECK(src.substr(r.comments[1].begin, r.comments[1].end - r.comments[1].begin) ==
          "/* block */");
    std::size_t idents = 0;
    for (const Token& t : r.tokens)
        if (t.kind == TokenKind::Identifier) ++idents;
    CHECK(idents == 4);  // int a int b
}

TEST_CASE("string and char literals swallow escapes") {
    LexResult r = lex(R"(x = "a\"b" + 'c' + '\'';)");
    std::vector<std::string> lits;
    for (const Token& t : r.tokens)
        if (t.kind == TokenKind::String || t.kind == TokenKind::CharLit)
            lits.push_back(t.text);
    CHECK(lits == std::vector<std::string>{R"("a\"b")", "'c'", R"('\'')"});
}

TEST_CASE("unterminated literals and comments are lex errors") {
    CHECK_THROWS_AS(lex("\"abc"), Error);
    CHECK_THROWS_AS(lex("'a"), Error);
    CHECK_THROWS_AS(lex("/* never closed"), Error);
    try {
        lex("\"abc");
        FAIL();
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SyntaxError);
    }
}

TEST_CASE("dollar is an identifier character") {
    LexResult r = lex("test$method$_$state$()");
    REQUIRE(r.tokens[0].kind == TokenKind::Identifier);
    CHECK(r.tokens[0].text == "test$method$_$state$");
}

TEST_CASE("placeholder scan: fixed cases") {
    CHECK(scan_placeholders("test$method$_$state$") ==
          std::set<std::string>{"method", "state"});
    CHECK(scan_placeholders("price$") == std::set<std::string>{});
    CHECK(scan_placeholders("$a$$b$") == std::set<std::string>{"a", "b"});
    CHECK(scan_placeholders("$1x$") == std::set<std::string>{});
    CHECK(scan_placeholders("$") == std::set<std::string>{});
    CHECK(scan_placeholders("$_x$ and $X9$") == std::set<std::string>{"_x", "X9"});
    // left-to-right non-overlap: the middle '$' closes the first match
    CHECK(scan_placeholders("$a$b$") == std::set<std::string>{"a"});
}

TEST_CASE("placeholder scan agrees with a regex oracle on random input") {
    std::mt19937 rng(20260826);
    const std::string alphabet = "$ab_1 ().;";
    std::regex pat(R"(\$[A-Za-z_][A-Za-z0-9_]*\$)");
    for (int iter = 0; iter < 2000; ++iter) {
        std::string s;
        int len = static_cast<int>(rng() % 24);
        for (int i = 0; i < len; ++i) s += alphabet[rng() % alphabet.size()];
        std::set<std::string> oracle;
        auto begin = std::sregex_iterator(s.begin(), s.end(), pat);
        for (auto it = begin; it != std::sregex_iterator(); ++it)
            oracle.insert(it->str().substr(1, it->str().size() - 2));
        INFO("input: " << s);
        CHECK(scan_placeholders(s) == oracle);
    }
}

TEST_CASE("placeholder spans are non-overlapping and in order") {
    auto spans = scan_placeholder_spans("x$a$y$bc$z");
    REQUIRE(spans.size() == 2);
    CHECK(spans[0].first == 1);
    CHECK(spans[0].second == "a");
    CHECK(spans[1].first == 5);
    CHECK(spans[1].second == "bc");
}

TEST_CASE("line_col is 1-based") {
    std::string s = "ab\ncd";
    CHECK(line_col(s, 0) == std::pair<int, int>{1, 1});
    CHECK(line_col(s, 3) == std::pair<int, int>{2, 1});
    CHECK(line_col(s, 4) == std::pair<int, int>{2, 2});
}
