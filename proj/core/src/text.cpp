#include <sentarc/text.hpp>

#include <locale>

namespace sentarc {

namespace {

constexpr char32_t replacement_char = 0xFFFD;

// Decodes one code point starting at text[pos] and advances pos.
char32_t decode_utf8(std::string_view text, std::size_t& pos)
{
    const auto lead = static_cast<unsigned char>(text[pos]);
    std::size_t extra = 0;
    char32_t cp = 0;
    if (lead < 0x80) {
        ++pos;
        return lead;
    }
    if ((lead & 0xE0) == 0xC0) {
        extra = 1;
        cp = lead & 0x1F;
    } else if ((lead & 0xF0) == 0xE0) {
        extra = 2;
        cp = lead & 0x0F;
    } else if ((lead & 0xF8) == 0xF0) {
        extra = 3;
        cp = lead & 0x07;
    } else {
        ++pos;
        return replacement_char;
    }
    if (pos + extra >= text.size()) {
        pos = text.size();
        return replacement_char;
    }
    for (std::size_t i = 1; i <= extra; ++i) {
        const auto byte = static_cast<unsigned char>(text[pos + i]);
        if ((byte & 0xC0) != 0x80) {
            pos += i;
            return replacement_char;
        }
        cp = (cp << 6) | (byte & 0x3F);
    }
    pos += extra + 1;
    static constexpr char32_t min_for_length[] = {0, 0x80, 0x800, 0x10000};
    if (cp < min_for_length[extra] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
        return replacement_char;
    }
    return cp;
}

void encode_utf8(char32_t cp, std::string& out)
{
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

// Unicode character classes come from the C.UTF-8 locale when the system
// provides it. Without it, every non-ASCII code point counts as a word
// character and is kept unchanged.
class CharClasses {
public:
    CharClasses()
    {
        try {
            locale_ = std::locale("C.UTF-8");
            unicode_ = true;
        } catch (const std::runtime_error&) {
            locale_ = std::locale::classic();
        }
        ctype_ = &std::use_facet<std::ctype<wchar_t>>(locale_);
    }

    bool is_word(char32_t cp) const
    {
        if (cp < 0x80) {
            return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') || (cp >= '0' && cp <= '9');
        }
        if (cp == replacement_char) {
            return false;
        }
        if (!unicode_) {
            return true;
        }
        return ctype_->is(std::ctype_base::alnum, static_cast<wchar_t>(cp));
    }

    char32_t lower(char32_t cp) const
    {
        if (cp < 0x80) {
            return (cp >= 'A' && cp <= 'Z') ? cp + ('a' - 'A') : cp;
        }
        if (!unicode_) {
            return cp;
        }
        return static_cast<char32_t>(ctype_->tolower(static_cast<wchar_t>(cp)));
    }

private:
    std::locale locale_;
    const std::ctype<wchar_t>* ctype_ = nullptr;
    bool unicode_ = false;
};

const CharClasses& char_classes()
{
    static const CharClasses classes;
    return classes;
}

bool is_apostrophe(char32_t cp) { return cp == U'\'' || cp == U'’'; }

} // namespace

std::string to_lower_utf8(std::string_view text)
{
    const auto& classes = char_classes();
    std::string out;
    out.reserve(text.size());
    std::size_t pos = 0;
    while (pos < text.size()) {
        encode_utf8(classes.lower(decode_utf8(text, pos)), out);
    }
    return out;
}

std::vector<std::string> tokenize(std::string_view text)
{
    const auto& classes = char_classes();

    std::vector<char32_t> cps;
    cps.reserve(text.size());
    for (std::size_t pos = 0; pos < text.size();) {
        cps.push_back(decode_utf8(text, pos));
    }

    std::vector<std::string> tokens;
    std::string current;
    for (std::size_t i = 0; i < cps.size(); ++i) {
        const char32_t cp = cps[i];
        if (classes.is_word(cp)) {
            encode_utf8(classes.lower(cp), current);
            continue;
        }
        if (is_apostrophe(cp) && !current.empty() && i + 1 < cps.size() &&
            classes.is_word(cps[i + 1])) {
            current.push_back('\'');
            continue;
        }
        if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) {
        tokens.push_back(std::move(current));
    }
    return tokens;
}

} // namespace sentarc
