#include "patchflow/pgm_io.hpp"

#include <cctype>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace patchflow {

namespace {

// Consumes whitespace and '#'-to-end-of-line comments.
void skip_separators(std::istream& in) {
    for (;;) {
        int c = in.peek();
        if (c == '#') {
            while (c != EOF && c != '\n') {
                in.get();
                c = in.peek();
            }
        } else if (c != EOF && std::isspace(static_cast<unsigned char>(c))) {
            in.get();
        } else {
            return;
        }
    }
}

int read_header_int(std::istream& in, const std::string& path, const char* field) {
    skip_separators(in);
    int value = 0;
    if (!(in >> value) || value <= 0) {
        throw std::runtime_error("pgm: malformed header (" + std::string(field) +
                                 ") in '" + path + "'");
    }
    return value;
}

}  // namespace

Frame read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("pgm: cannot open '" + path + "'");
    }

    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (!in || magic[0] != 'P' || magic[1] != '5') {
        throw std::runtime_error("pgm: '" + path + "' is not a binary PGM (P5) file");
    }

    const int width = read_header_int(in, path, "width");
    const int height = read_header_int(in, path, "height");
    const int maxval = read_header_int(in, path, "maxval");
    if (maxval != 255) {
        throw std::runtime_error("pgm: unsupported maxval " + std::to_string(maxval) +
                                 " in '" + path + "' (expected 255)");
    }

    // Exactly one whitespace byte separates the header from the payload.
    in.get();

    const std::size_t pixels =
        static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    std::vector<std::uint8_t> data(pixels);
    in.read(reinterpret_cast<char*>(data.data()),
            static_cast<std::streamsize>(pixels));
    if (static_cast<std::size_t>(in.gcount()) != pixels) {
        throw std::runtime_error("pgm: truncated pixel data in '" + path + "'");
    }

    return Frame(width, height, std::move(data));
}

void write_pgm(const Frame& frame, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("pgm: cannot open '" + path + "' for writing");
    }
    out << "P5\n" << frame.width() << ' ' << frame.height() << "\n255\n";
    out.write(reinterpret_cast<const char*>(frame.data().data()),
              static_cast<std::streamsize>(frame.data().size()));
    out.flush();
    if (!out) {
        throw std::runtime_error("pgm: write failure on '" + path + "'");
    }
}

}  // namespace patchflow
