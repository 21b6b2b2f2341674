// Binary index snapshot. Layout, all integers little-endian:
//   magic "PMSIDX01"
//   u32 doc_count, then per document:
//     str doc_id, u8 flags (1 = min_age, 2 = max_age, 4 = sex),
//     [i32 min_age] [i32 max_age] [u8 sex]
//   per field in {title, abstract, mesh, gene}:
//     u32 doc_length[doc_count]
//     u32 term_count, then per term in lexicographic order:
//       str term, u32 posting_count, then per posting:
//         u32 doc, u32 position_count, u32 positions[position_count]
// where str is u32 byte length followed by the bytes.
#include <array>
#include <cstring>
#include <istream>
#include <ostream>

#include "pmsearch/error.hpp"
#include "pmsearch/index/index.hpp"

namespace pmsearch::index {

namespace {

constexpr std::array<char, 8> kMagic{'P', 'M', 'S', 'I', 'D', 'X', '0', '1'};

void put_u32(std::ostream& out, std::uint32_t v)
{
    std::array<char, 4> bytes{static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                              static_cast<char>((v >> 16) & 0xff),
                              static_cast<char>((v >> 24) & 0xff)};
    out.write(bytes.data(), bytes.size());
}

void put_str(std::ostream& out, std::string_view s)
{
    put_u32(out, static_cast<std::uint32_t>(s.size()));
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::uint32_t get_u32(std::istream& in)
{
    std::array<unsigned char, 4> bytes{};
    in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
    if (!in) {
        throw ParseError("index snapshot: unexpected end of data");
    }
    return static_cast<std::uint32_t>(bytes[0]) | (static_cast<std::uint32_t>(bytes[1]) << 8) |
           (static_cast<std::uint32_t>(bytes[2]) << 16) |
           (static_cast<std::uint32_t>(bytes[3]) << 24);
}

std::uint8_t get_u8(std::istream& in)
{
    char c = 0;
    if (!in.get(c)) {
        throw ParseError("index snapshot: unexpected end of data");
    }
    return static_cast<std::uint8_t>(c);
}

std::string get_str(std::istream& in)
{
    auto size = get_u32(in);
    std::string s(size, '\0');
    in.read(s.data(), size);
    if (!in) {
        throw ParseError("index snapshot: unexpected end of data");
    }
    return s;
}

}  // namespace

void Index::write_snapshot(std::ostream& out) const
{
    out.write(kMagic.data(), kMagic.size());
    put_u32(out, static_cast<std::uint32_t>(docs_.size()));
    for (const auto& meta : docs_) {
        put_str(out, meta.doc_id);
        std::uint8_t flags = (meta.min_age ? 1 : 0) | (meta.max_age ? 2 : 0) | (meta.sex ? 4 : 0);
        out.put(static_cast<char>(flags));
        if (meta.min_age) {
            put_u32(out, static_cast<std::uint32_t>(*meta.min_age));
        }
        if (meta.max_age) {
            put_u32(out, static_cast<std::uint32_t>(*meta.max_age));
        }
        if (meta.sex) {
            out.put(static_cast<char>(*meta.sex));
        }
    }
    for (const auto& stats : fields_) {
        for (auto length : stats.doc_lengths()) {
            put_u32(out, length);
        }
        put_u32(out, static_cast<std::uint32_t>(stats.terms().size()));
        for (const auto& [term, list] : stats.terms()) {
            put_str(out, term);
            put_u32(out, static_cast<std::uint32_t>(list.size()));
            for (std::size_t i = 0; i < list.size(); ++i) {
                put_u32(out, list.docs()[i]);
                auto positions = list.positions(i);
                put_u32(out, static_cast<std::uint32_t>(positions.size()));
                for (auto p : positions) {
                    put_u32(out, p);
                }
            }
        }
    }
}

Index Index::read_snapshot(std::istream& in)
{
    std::array<char, 8> magic{};
    in.read(magic.data(), magic.size());
    if (!in || magic != kMagic) {
        throw ParseError("index snapshot: bad magic header");
    }
    Index index;
    auto doc_count = get_u32(in);
    index.docs_.resize(doc_count);
    for (auto& meta : index.docs_) {
        meta.doc_id = get_str(in);
        auto flags = get_u8(in);
        if (flags & 1) {
            meta.min_age = static_cast<int>(get_u32(in));
        }
        if (flags & 2) {
            meta.max_age = static_cast<int>(get_u32(in));
        }
        if (flags & 4) {
            auto sex = get_u8(in);
            if (sex > static_cast<std::uint8_t>(Sex::all)) {
                throw ParseError("index snapshot: bad sex code");
            }
            meta.sex = static_cast<Sex>(sex);
        }
    }
    index.rebuild_lookup();
    for (auto& stats : index.fields_) {
        std::vector<std::uint32_t> lengths(doc_count);
        for (auto& length : lengths) {
            length = get_u32(in);
        }
        TermMap terms;
        auto term_count = get_u32(in);
        std::vector<std::uint32_t> positions;
        for (std::uint32_t t = 0; t < term_count; ++t) {
            auto term = get_str(in);
            PostingList list;
            auto postings = get_u32(in);
            for (std::uint32_t p = 0; p < postings; ++p) {
                auto doc = get_u32(in);
                if (doc >= doc_count) {
                    throw ParseError("index snapshot: posting references unknown document");
                }
                positions.resize(get_u32(in));
                for (auto& pos : positions) {
                    pos = get_u32(in);
                }
                try {
                    list.append(doc, static_cast<double>(lengths[doc]), positions);
                } catch (const InvalidArgument& e) {
                    throw ParseError(std::string("index snapshot: ") + e.what());
                }
            }
            terms.emplace(std::move(term), std::move(list));
        }
        stats = FieldStats(std::move(terms), std::move(lengths));
    }
    return index;
}

}  // namespace pmsearch::index
