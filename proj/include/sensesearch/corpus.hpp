#pragma once

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "core.hpp"
#include "error.hpp"
#include "rng.hpp"
#include "scorer.hpp"

namespace sensesearch
{

/// Documents with their gold standards, aligned by index.
struct CorpusFile
{
    std::vector<Document> documents;
    std::vector<GoldStandard> golds;

    std::size_t word_count() const noexcept
    {
        std::size_t n = 0;
        for (const auto& d : documents) {
            n += d.size();
        }
        return n;
    }

    void validate() const
    {
        if (documents.size() != golds.size()) {
            throw InvalidInput("corpus: document and gold standard counts differ");
        }
        for (std::size_t i = 0; i < documents.size(); ++i) {
            if (documents[i].empty()) {
                throw InvalidInput("corpus: document '" + documents[i].name() + "' has no words");
            }
            golds[i].validate(documents[i]);
        }
    }

    friend bool operator==(const CorpusFile&, const CorpusFile&) = default;
};

namespace detail
{

template <typename T>
std::optional<T> parse_unsigned(std::string_view text)
{
    T value{};
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || text.empty()) {
        return std::nullopt;
    }
    return value;
}

inline std::vector<std::string_view> split_spaces(std::string_view line)
{
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = line.find(' ', start);
        fields.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) {
            return fields;
        }
        start = pos + 1;
    }
}

} // namespace detail

/**
 * Reads the line-oriented corpus format:
 *
 *     # comment
 *     @doc <name>
 *     <surface> <senseCount> <sentenceIndex> <gold>
 *
 * Fields are separated by single spaces. Sense indices are 0-based, `-` in
 * the gold column marks an unannotated word and `-` in the sentence column a
 * document without sentence boundaries. Blank lines are ignored.
 */
inline CorpusFile parse_corpus(std::istream& in)
{
    CorpusFile corpus;
    std::string name;
    std::vector<WordSlot> words;
    std::vector<std::optional<Sense>> gold;
    bool open = false;
    std::size_t doc_line = 0;

    auto close = [&]() {
        if (!open) {
            return;
        }
        if (words.empty()) {
            throw ParseError(doc_line, "document '" + name + "' has no words");
        }
        try {
            Document doc(name, std::move(words));
            GoldStandard g(std::move(gold));
            g.validate(doc);
            corpus.documents.push_back(std::move(doc));
            corpus.golds.push_back(std::move(g));
        } catch (const InvalidInput& e) {
            throw ParseError(doc_line, e.what());
        }
        words.clear();
        gold.clear();
        open = false;
    };

    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line(raw);
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line.empty() || line.front() == '#') {
            continue;
        }
        if (line.starts_with("@doc")) {
            if (line.size() < 6 || line[4] != ' ') {
                throw ParseError(line_no, "expected '@doc <name>'");
            }
            close();
            name = std::string(line.substr(5));
            open = true;
            doc_line = line_no;
            continue;
        }
        if (!open) {
            throw ParseError(line_no, "word line before any '@doc'");
        }
        const auto f = detail::split_spaces(line);
        if (f.size() != 4 || f[0].empty()) {
            throw ParseError(line_no, "expected '<surface> <senseCount> <sentenceIndex> <gold>'");
        }
        const auto senses = detail::parse_unsigned<Sense>(f[1]);
        if (!senses || *senses == 0) {
            throw ParseError(line_no, "sense count must be a positive integer");
        }
        std::optional<std::size_t> sentence;
        if (f[2] != "-") {
            sentence = detail::parse_unsigned<std::size_t>(f[2]);
            if (!sentence) {
                throw ParseError(line_no, "sentence index must be a non-negative integer or '-'");
            }
        }
        std::optional<Sense> g;
        if (f[3] != "-") {
            g = detail::parse_unsigned<Sense>(f[3]);
            if (!g) {
                throw ParseError(line_no, "gold sense must be a non-negative integer or '-'");
            }
            if (*g >= *senses) {
                throw ParseError(line_no, "gold sense " + std::to_string(*g) + " out of range for word " +
                                              std::to_string(words.size()) + " ('" + std::string(f[0]) + "')");
            }
        }
        words.push_back({std::string(f[0]), *senses, sentence});
        gold.push_back(g);
    }
    close();
    return corpus;
}

inline CorpusFile parse_corpus(const std::string& text)
{
    std::istringstream in(text);
    return parse_corpus(in);
}

inline CorpusFile load_corpus(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InvalidInput("cannot open corpus file '" + path + "'");
    }
    return parse_corpus(in);
}

/// Serializes in the format read by parse_corpus. Deterministic byte output.
inline std::string format_corpus(const CorpusFile& corpus)
{
    corpus.validate();
    std::string out;
    for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
        const Document& doc = corpus.documents[d];
        if (doc.name().empty() || doc.name().find('\n') != std::string::npos) {
            throw InvalidInput("corpus: document names must be non-empty single lines");
        }
        out += "@doc " + doc.name() + "\n";
        for (std::size_t i = 0; i < doc.size(); ++i) {
            const WordSlot& w = doc[i];
            if (w.surface.empty() || w.surface.find_first_of(" \n\r") != std::string::npos || w.surface.front() == '#' ||
                w.surface.front() == '@') {
                throw InvalidInput("corpus: surface '" + w.surface + "' cannot be written");
            }
            out += w.surface;
            out += ' ';
            out += std::to_string(w.sense_count);
            out += ' ';
            out += w.sentence ? std::to_string(*w.sentence) : std::string("-");
            out += ' ';
            const auto& g = corpus.golds[d][i];
            out += g ? std::to_string(*g) : std::string("-");
            out += '\n';
        }
    }
    return out;
}

inline void save_corpus(const CorpusFile& corpus, const std::string& path)
{
    const std::string text = format_corpus(corpus);
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InvalidInput("cannot write corpus file '" + path + "'");
    }
    out << text;
}

/**
 * Sense assignments for the documents of a corpus, one line per document:
 * `<document name> <sense> <sense> ...`. Lines starting with `#` are comments.
 * The result is aligned with corpus.documents; every document must appear once.
 */
inline std::vector<Configuration> parse_configurations(std::istream& in, const CorpusFile& corpus)
{
    std::vector<std::optional<Configuration>> found(corpus.documents.size());
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::istringstream fields(raw);
        std::string name;
        if (!(fields >> name) || name.front() == '#') {
            continue;
        }
        std::size_t d = 0;
        while (d < corpus.documents.size() && corpus.documents[d].name() != name) {
            ++d;
        }
        if (d == corpus.documents.size()) {
            throw ParseError(line_no, "unknown document '" + name + "'");
        }
        if (found[d]) {
            throw ParseError(line_no, "document '" + name + "' listed twice");
        }
        std::vector<Sense> senses;
        std::string token;
        while (fields >> token) {
            const auto s = detail::parse_unsigned<Sense>(token);
            if (!s) {
                throw ParseError(line_no, "bad sense index '" + token + "'");
            }
            senses.push_back(*s);
        }
        Configuration cfg(std::move(senses));
        if (!is_valid(corpus.documents[d], cfg)) {
            throw ParseError(line_no, "configuration does not fit document '" + name + "'");
        }
        found[d] = std::move(cfg);
    }
    std::vector<Configuration> out;
    for (std::size_t d = 0; d < found.size(); ++d) {
        if (!found[d]) {
            throw ParseError(line_no, "no configuration for document '" + corpus.documents[d].name() + "'");
        }
        out.push_back(std::move(*found[d]));
    }
    return out;
}

/**
 * Synthetic corpus: sense counts uniform in [1, max_senses], gold senses
 * uniform within range, sentences of sentence_length consecutive words.
 * Draws per word, in order: sense count, gold sense.
 */
inline CorpusFile generate_corpus(std::size_t doc_count, std::size_t words_per_doc, Sense max_senses,
                                  std::size_t sentence_length, std::uint64_t seed)
{
    if (doc_count == 0 || words_per_doc == 0 || max_senses == 0 || sentence_length == 0) {
        throw InvalidInput("generate_corpus: all counts must be positive");
    }
    Rng rng(seed);
    CorpusFile corpus;
    for (std::size_t d = 0; d < doc_count; ++d) {
        std::vector<WordSlot> words;
        std::vector<std::optional<Sense>> gold;
        words.reserve(words_per_doc);
        gold.reserve(words_per_doc);
        for (std::size_t i = 0; i < words_per_doc; ++i) {
            const auto senses = static_cast<Sense>(1 + rng.below(max_senses));
            const auto g = static_cast<Sense>(rng.below(senses));
            words.push_back({"w" + std::to_string(i), senses, i / sentence_length});
            gold.emplace_back(g);
        }
        corpus.documents.emplace_back("doc" + std::to_string(d), std::move(words));
        corpus.golds.emplace_back(std::move(gold));
    }
    return corpus;
}

} // namespace sensesearch
