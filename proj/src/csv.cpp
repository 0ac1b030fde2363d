#include <wcoj/csv.hpp>

#include <wcoj/error.hpp>

#include <fstream>
#include <sstream>


namespace wcoj::cli {

RawTable parse_csv(std::string_view text, std::string name)
{
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool quoted = false;
    bool field_started = false;

    auto end_field = [&] {
        record.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_record = [&] {
        if (not field.empty() and field.back() == '\r')
            field.pop_back();
        end_field();
        if (not (record.size() == 1 and record[0].empty()))
            records.push_back(std::move(record));
        record.clear();
    };

    for (std::size_t i = 0; i != text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 != text.size() and text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        switch (c) {
            case '"':
                if (field_started)
                    throw InvalidInput("csv '" + name + "': stray quote inside a field");
                quoted = true;
                field_started = true;
                break;
            case ',':
                end_field();
                break;
            case '\n':
                end_record();
                break;
            default:
                field += c;
                field_started = true;
        }
    }
    if (quoted)
        throw InvalidInput("csv '" + name + "': unterminated quoted field");
    if (field_started or not record.empty())
        end_record();

    if (records.empty())
        throw InvalidInput("csv '" + name + "': missing header line");

    RawTable table;
    table.name = std::move(name);
    table.header = std::move(records.front());
    table.rows.assign(std::make_move_iterator(records.begin() + 1), std::make_move_iterator(records.end()));
    return table;
}

RawTable read_csv(const std::filesystem::path &path, std::string name)
{
    std::ifstream in(path, std::ios::binary);
    if (not in)
        throw InvalidInput("cannot open '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_csv(buffer.str(), std::move(name));
}

void write_csv_row(std::ostream &os, const std::vector<std::string> &fields)
{
    for (std::size_t i = 0; i != fields.size(); ++i) {
        if (i)
            os << ',';
        const auto &f = fields[i];
        if (f.find_first_of(",\"\n\r") == std::string::npos and not f.empty()) {
            os << f;
            continue;
        }
        if (f.empty() and fields.size() > 1) {
            continue;
        }
        os << '"';
        for (char c : f) {
            if (c == '"') os << '"';
            os << c;
        }
        os << '"';
    }
    os << '\n';
}

}
