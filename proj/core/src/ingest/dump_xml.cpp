#include "colstate/ingest/dump_xml.hpp"

#include <expat.h>

#include <array>
#include <cstring>
#include <fstream>
#include <istream>
#include <sstream>

#include "colstate/errors.hpp"

namespace colstate::ingest {

std::string dump_sha1_to_hex(const std::string& raw) {
    if (valid_sha1(raw)) return raw;
    if (raw.empty() || raw.size() > 32) return {};
    // Base36 digits into a 160-bit little-endian limb accumulator.
    std::array<std::uint64_t, 3> limbs{0, 0, 0};
    for (char c : raw) {
        std::uint64_t digit;
        if (c >= '0' && c <= '9') digit = static_cast<std::uint64_t>(c - '0');
        else if (c >= 'a' && c <= 'z') digit = static_cast<std::uint64_t>(c - 'a' + 10);
        else return {};
        std::uint64_t carry = digit;
        for (auto& limb : limbs) {
            const unsigned __int128 v =
                static_cast<unsigned __int128>(limb) * 36u + carry;
            limb = static_cast<std::uint64_t>(v);
            carry = static_cast<std::uint64_t>(v >> 64);
        }
        if (carry != 0) return {};  // exceeds 192 bits, not a sha1
    }
    if (limbs[2] >> 32 != 0) return {};  // exceeds 160 bits
    static const char* hex = "0123456789abcdef";
    std::string out(40, '0');
    for (int nibble = 0; nibble < 40; ++nibble) {
        const int bit = nibble * 4;
        const auto limb = limbs[static_cast<std::size_t>(bit / 64)];
        out[static_cast<std::size_t>(39 - nibble)] = hex[(limb >> (bit % 64)) & 0xF];
    }
    return out;
}

namespace {

struct DumpHandler {
    const PageCallback& on_page;
    DumpReport report;

    std::vector<std::string> path;
    std::string text;
    bool capture = false;

    PageHistory page;
    RevisionRecord revision;
    bool revision_has_timestamp = false;
    bool contributor_is_ip = false;

    explicit DumpHandler(const PageCallback& cb) : on_page(cb) {}

    bool parent_is(const char* name) const {
        return path.size() >= 2 && path[path.size() - 2] == name;
    }

    void start(const char* name) {
        path.emplace_back(name);
        text.clear();
        // Only metadata leaves are buffered; <text> in particular is not.
        capture = false;
        if (parent_is("page") && std::strcmp(name, "title") == 0) capture = true;
        if (parent_is("revision") &&
            (std::strcmp(name, "id") == 0 || std::strcmp(name, "timestamp") == 0 ||
             std::strcmp(name, "comment") == 0 || std::strcmp(name, "sha1") == 0))
            capture = true;
        if (parent_is("contributor") &&
            (std::strcmp(name, "username") == 0 || std::strcmp(name, "ip") == 0))
            capture = true;

        if (std::strcmp(name, "revision") == 0 && parent_is("page")) {
            revision = RevisionRecord{};
            revision_has_timestamp = false;
            contributor_is_ip = false;
        }
    }

    void characters(const char* data, int len) {
        if (capture && text.size() < (1u << 20))
            text.append(data, static_cast<std::size_t>(len));
    }

    void end(const char* name) {
        if (parent_is("page") && std::strcmp(name, "title") == 0) {
            page.title = text;
        } else if (parent_is("revision")) {
            if (std::strcmp(name, "id") == 0) {
                try {
                    revision.revision_id = std::stoll(text);
                } catch (const std::exception&) {
                }
            } else if (std::strcmp(name, "timestamp") == 0) {
                revision.timestamp = text;
                try {
                    revision.epoch_seconds = parse_iso8601(text);
                    revision_has_timestamp = true;
                } catch (const InputError&) {
                    revision_has_timestamp = false;
                }
            } else if (std::strcmp(name, "comment") == 0) {
                revision.comment = text;
            } else if (std::strcmp(name, "sha1") == 0) {
                revision.sha1 = dump_sha1_to_hex(normalize_sha1(text));
            }
        } else if (parent_is("contributor")) {
            if (std::strcmp(name, "username") == 0 && !contributor_is_ip) {
                revision.user = text;
            } else if (std::strcmp(name, "ip") == 0) {
                revision.user = text;
                contributor_is_ip = true;
            }
        }

        if (std::strcmp(name, "revision") == 0 && parent_is("page")) {
            if (revision_has_timestamp) {
                if (revision.hash_absent()) ++report.hash_absent;
                ++report.revisions;
                page.records.push_back(std::move(revision));
            } else {
                ++report.rejected_missing_timestamp;
            }
        } else if (std::strcmp(name, "page") == 0) {
            page.sort_records();
            ++report.pages;
            on_page(std::move(page));
            page = PageHistory{};
        }
        path.pop_back();
        capture = false;
        text.clear();
    }
};

extern "C" {
static void start_handler(void* user, const XML_Char* name, const XML_Char**) {
    static_cast<DumpHandler*>(user)->start(name);
}
static void end_handler(void* user, const XML_Char* name) {
    static_cast<DumpHandler*>(user)->end(name);
}
static void char_handler(void* user, const XML_Char* data, int len) {
    static_cast<DumpHandler*>(user)->characters(data, len);
}
}

}  // namespace

DumpReport parse_dump_stream(std::istream& in, const PageCallback& on_page) {
    XML_Parser parser = XML_ParserCreate(nullptr);
    if (!parser) throw InputError("cannot create XML parser");
    DumpHandler handler(on_page);
    XML_SetUserData(parser, &handler);
    XML_SetElementHandler(parser, start_handler, end_handler);
    XML_SetCharacterDataHandler(parser, char_handler);

    constexpr std::size_t chunk = 64 * 1024;
    std::vector<char> buffer(chunk);
    bool done = false;
    try {
        while (!done) {
            in.read(buffer.data(), static_cast<std::streamsize>(chunk));
            const auto got = in.gcount();
            done = got == 0 || in.eof();
            if (XML_Parse(parser, buffer.data(), static_cast<int>(got), done) ==
                XML_STATUS_ERROR) {
                std::ostringstream os;
                os << "XML parse error at line "
                   << XML_GetCurrentLineNumber(parser) << ", column "
                   << XML_GetCurrentColumnNumber(parser) << ": "
                   << XML_ErrorString(XML_GetErrorCode(parser));
                throw InputError(os.str());
            }
        }
    } catch (...) {
        XML_ParserFree(parser);
        throw;
    }
    XML_ParserFree(parser);
    return handler.report;
}

std::vector<PageHistory> parse_dump(std::istream& in, DumpReport* report) {
    std::vector<PageHistory> pages;
    const DumpReport r = parse_dump_stream(
        in, [&pages](PageHistory&& page) { pages.push_back(std::move(page)); });
    if (report) *report = r;
    return pages;
}

std::vector<PageHistory> load_dump(const std::string& path, DumpReport* report) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open dump file: " + path);
    return parse_dump(in, report);
}

}  // namespace colstate::ingest
