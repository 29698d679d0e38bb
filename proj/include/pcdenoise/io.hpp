#pragma once

#include <bit>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "geometry.hpp"
#include "mesh.hpp"

static_assert(std::endian::native == std::endian::little,
              "binary PLY support assumes a little-endian host");

namespace pcdn {

namespace detail {

[[noreturn]] inline void line_error(std::size_t line, const std::string& what) {
    throw std::runtime_error("line " + std::to_string(line) + ": " + what);
}

inline bool parse_double(const std::string& token, double& out) {
    try {
        std::size_t used = 0;
        out = std::stod(token, &used);
        return used == token.size();
    } catch (const std::exception&) {
        return false;
    }
}

inline bool parse_long(const std::string& token, long long& out) {
    try {
        std::size_t used = 0;
        out = std::stoll(token, &used);
        return used == token.size();
    } catch (const std::exception&) {
        return false;
    }
}

inline std::vector<std::string> split_tokens(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream ss(line);
    std::string t;
    while (ss >> t) tokens.push_back(t);
    return tokens;
}

// Strips a trailing CR so files with Windows line endings parse cleanly.
inline bool next_line(std::istream& in, std::string& line, std::size_t& line_no) {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    ++line_no;
    return true;
}

inline void format_double(std::string& out, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

inline std::string lower_ext(const std::string& path) {
    const std::size_t dot = path.find_last_of('.');
    if (dot == std::string::npos) return "";
    std::string ext = path.substr(dot + 1);
    for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return ext;
}

inline std::ifstream open_input(const std::string& path, bool binary) {
    std::ifstream in(path, binary ? std::ios::in | std::ios::binary : std::ios::in);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    return in;
}

inline std::ofstream open_output(const std::string& path, bool binary) {
    std::ofstream out(path, binary ? std::ios::out | std::ios::binary : std::ios::out);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    return out;
}

inline PointLabel label_from_value(long long v) {
    switch (v) {
    case 0: return PointLabel::surface;
    case 1: return PointLabel::white_noise;
    case 2: return PointLabel::outlier;
    default: throw std::runtime_error("invalid label value: " + std::to_string(v));
    }
}

} // namespace detail

// --- XYZ ----------------------------------------------------------------------

// Whitespace-separated "x y z" per line. Blank lines and lines starting with
// '#' (after leading whitespace) are skipped.
inline PointCloud read_xyz(std::istream& in) {
    PointCloud cloud;
    std::string line;
    std::size_t line_no = 0;
    while (detail::next_line(in, line, line_no)) {
        const std::size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto tokens = detail::split_tokens(line);
        if (tokens.size() != 3) detail::line_error(line_no, "expected 3 coordinates");
        Point3 p;
        for (int a = 0; a < 3; ++a)
            if (!detail::parse_double(tokens[a], p[a])) detail::line_error(line_no, "invalid number: " + tokens[a]);
        if (!is_finite(p)) detail::line_error(line_no, "invalid point");
        cloud.push_back(p);
    }
    return cloud;
}

inline PointCloud read_xyz(const std::string& path) {
    auto in = detail::open_input(path, false);
    return read_xyz(in);
}

// Labels are not representable in XYZ and are dropped.
inline void write_xyz(const PointCloud& cloud, std::ostream& out) {
    std::string buf;
    for (const Point3& p : cloud.points) {
        buf.clear();
        detail::format_double(buf, p.x);
        buf += ' ';
        detail::format_double(buf, p.y);
        buf += ' ';
        detail::format_double(buf, p.z);
        buf += '\n';
        out << buf;
    }
}

inline void write_xyz(const PointCloud& cloud, const std::string& path) {
    auto out = detail::open_output(path, false);
    write_xyz(cloud, out);
    if (!out) throw std::runtime_error("cannot write file: " + path);
}

// --- PLY ----------------------------------------------------------------------

namespace detail {

enum class PlyType { i8, u8, i16, u16, i32, u32, f32, f64 };

inline bool ply_type_from_name(const std::string& name, PlyType& out) {
    if (name == "char" || name == "int8") out = PlyType::i8;
    else if (name == "uchar" || name == "uint8") out = PlyType::u8;
    else if (name == "short" || name == "int16") out = PlyType::i16;
    else if (name == "ushort" || name == "uint16") out = PlyType::u16;
    else if (name == "int" || name == "int32") out = PlyType::i32;
    else if (name == "uint" || name == "uint32") out = PlyType::u32;
    else if (name == "float" || name == "float32") out = PlyType::f32;
    else if (name == "double" || name == "float64") out = PlyType::f64;
    else return false;
    return true;
}

inline std::size_t ply_type_size(PlyType t) {
    switch (t) {
    case PlyType::i8:
    case PlyType::u8: return 1;
    case PlyType::i16:
    case PlyType::u16: return 2;
    case PlyType::i32:
    case PlyType::u32:
    case PlyType::f32: return 4;
    default: return 8;
    }
}

inline bool ply_type_integral(PlyType t) { return t != PlyType::f32 && t != PlyType::f64; }

struct PlyProperty {
    std::string name;
    PlyType type = PlyType::f32;
    bool is_list = false;
    PlyType count_type = PlyType::u8;
};

struct PlyElement {
    std::string name;
    std::size_t count = 0;
    std::vector<PlyProperty> properties;
};

struct PlyHeader {
    bool binary = false;
    std::vector<PlyElement> elements;
    std::size_t line_count = 0; // header lines consumed, for body line numbers
};

inline PlyHeader read_ply_header(std::istream& in) {
    PlyHeader header;
    std::string line;
    std::size_t line_no = 0;
    if (!next_line(in, line, line_no) || line != "ply") line_error(1, "not a PLY file");
    bool format_seen = false;
    for (;;) {
        if (!next_line(in, line, line_no)) line_error(line_no, "unexpected end of header");
        const auto tokens = split_tokens(line);
        if (tokens.empty()) continue;
        const std::string& kw = tokens[0];
        if (kw == "comment" || kw == "obj_info") continue;
        if (kw == "format") {
            if (tokens.size() != 3) line_error(line_no, "malformed format line");
            if (tokens[1] == "ascii") header.binary = false;
            else if (tokens[1] == "binary_little_endian") header.binary = true;
            else throw std::runtime_error("unsupported encoding");
            format_seen = true;
        } else if (kw == "element") {
            long long count = 0;
            if (tokens.size() != 3 || !parse_long(tokens[2], count) || count < 0)
                line_error(line_no, "malformed element line");
            header.elements.push_back(PlyElement{tokens[1], static_cast<std::size_t>(count), {}});
        } else if (kw == "property") {
            if (header.elements.empty()) line_error(line_no, "property before element");
            PlyProperty prop;
            if (tokens.size() == 5 && tokens[1] == "list") {
                prop.is_list = true;
                if (!ply_type_from_name(tokens[2], prop.count_type) ||
                    !ply_type_from_name(tokens[3], prop.type))
                    line_error(line_no, "unknown property type");
                if (!ply_type_integral(prop.count_type)) line_error(line_no, "list count must be integral");
                prop.name = tokens[4];
            } else if (tokens.size() == 3) {
                if (!ply_type_from_name(tokens[1], prop.type)) line_error(line_no, "unknown property type");
                prop.name = tokens[2];
            } else {
                line_error(line_no, "malformed property line");
            }
            header.elements.back().properties.push_back(prop);
        } else if (kw == "end_header") {
            if (!format_seen) line_error(line_no, "missing format line");
            header.line_count = line_no;
            return header;
        } else {
            line_error(line_no, "unknown header keyword: " + kw);
        }
    }
}

// Reads one binary scalar as double (numeric value preserved for all types).
inline double read_binary_scalar(std::istream& in, PlyType t) {
    unsigned char buf[8];
    in.read(reinterpret_cast<char*>(buf), static_cast<std::streamsize>(ply_type_size(t)));
    if (!in) throw std::runtime_error("unexpected end of binary data");
    switch (t) {
    case PlyType::i8: return static_cast<double>(static_cast<std::int8_t>(buf[0]));
    case PlyType::u8: return static_cast<double>(buf[0]);
    case PlyType::i16: { std::int16_t v; std::memcpy(&v, buf, 2); return v; }
    case PlyType::u16: { std::uint16_t v; std::memcpy(&v, buf, 2); return v; }
    case PlyType::i32: { std::int32_t v; std::memcpy(&v, buf, 4); return v; }
    case PlyType::u32: { std::uint32_t v; std::memcpy(&v, buf, 4); return v; }
    case PlyType::f32: { float v; std::memcpy(&v, buf, 4); return v; }
    default: { double v; std::memcpy(&v, buf, 8); return v; }
    }
}

} // namespace detail

// ASCII or binary little-endian PLY point cloud: a vertex element with
// float/double x, y, z and an optional integral `label` property (0 surface,
// 1 white noise, 2 outlier). Extra scalar properties are skipped; elements
// other than vertex are rejected by name.
inline PointCloud read_ply(std::istream& in) {
    const detail::PlyHeader header = detail::read_ply_header(in);
    const detail::PlyElement* vertex = nullptr;
    for (const auto& elem : header.elements) {
        if (elem.name == "vertex") vertex = &elem;
        else throw std::runtime_error("unsupported element: " + elem.name);
    }
    if (!vertex) throw std::runtime_error("missing vertex element");

    int coord_slot[3] = {-1, -1, -1};
    int label_slot = -1;
    for (std::size_t pi = 0; pi < vertex->properties.size(); ++pi) {
        const auto& prop = vertex->properties[pi];
        if (prop.is_list) continue;
        const int slot = static_cast<int>(pi);
        if (prop.name == "x" || prop.name == "y" || prop.name == "z") {
            if (detail::ply_type_integral(prop.type))
                throw std::runtime_error("coordinate property must be float or double");
            coord_slot[prop.name[0] - 'x'] = slot;
        } else if (prop.name == "label") {
            if (!detail::ply_type_integral(prop.type))
                throw std::runtime_error("label property must be integral");
            label_slot = slot;
        }
    }
    for (int a = 0; a < 3; ++a)
        if (coord_slot[a] < 0) throw std::runtime_error("missing vertex coordinate property");

    PointCloud cloud;
    cloud.points.reserve(vertex->count);
    if (label_slot >= 0) cloud.labels.reserve(vertex->count);

    if (header.binary) {
        for (std::size_t i = 0; i < vertex->count; ++i) {
            Point3 p;
            long long label = 0;
            for (std::size_t pi = 0; pi < vertex->properties.size(); ++pi) {
                const auto& prop = vertex->properties[pi];
                if (prop.is_list) {
                    const double n = detail::read_binary_scalar(in, prop.count_type);
                    for (long long k = 0; k < static_cast<long long>(n); ++k)
                        detail::read_binary_scalar(in, prop.type);
                    continue;
                }
                const double v = detail::read_binary_scalar(in, prop.type);
                const int slot = static_cast<int>(pi);
                if (slot == coord_slot[0]) p.x = v;
                else if (slot == coord_slot[1]) p.y = v;
                else if (slot == coord_slot[2]) p.z = v;
                else if (slot == label_slot) label = static_cast<long long>(v);
            }
            if (!is_finite(p)) throw std::runtime_error("invalid point");
            cloud.points.push_back(p);
            if (label_slot >= 0) cloud.labels.push_back(detail::label_from_value(label));
        }
    } else {
        std::string line;
        std::size_t line_no = header.line_count;
        for (std::size_t i = 0; i < vertex->count; ++i) {
            if (!detail::next_line(in, line, line_no)) detail::line_error(line_no + 1, "missing vertex row");
            const auto tokens = detail::split_tokens(line);
            if (tokens.size() < vertex->properties.size())
                detail::line_error(line_no, "too few values in vertex row");
            Point3 p;
            long long label = 0;
            std::size_t ti = 0;
            for (std::size_t pi = 0; pi < vertex->properties.size(); ++pi) {
                const auto& prop = vertex->properties[pi];
                if (prop.is_list) {
                    long long n = 0;
                    if (ti >= tokens.size() || !detail::parse_long(tokens[ti++], n) || n < 0)
                        detail::line_error(line_no, "malformed list property");
                    ti += static_cast<std::size_t>(n);
                    if (ti > tokens.size()) detail::line_error(line_no, "malformed list property");
                    continue;
                }
                if (ti >= tokens.size()) detail::line_error(line_no, "too few values in vertex row");
                const std::string& tok = tokens[ti++];
                const int slot = static_cast<int>(pi);
                if (slot == label_slot) {
                    if (!detail::parse_long(tok, label)) detail::line_error(line_no, "invalid label value: " + tok);
                } else {
                    double v = 0.0;
                    if (!detail::parse_double(tok, v)) detail::line_error(line_no, "invalid number: " + tok);
                    if (slot == coord_slot[0]) p.x = v;
                    else if (slot == coord_slot[1]) p.y = v;
                    else if (slot == coord_slot[2]) p.z = v;
                }
            }
            if (!is_finite(p)) detail::line_error(line_no, "invalid point");
            cloud.points.push_back(p);
            if (label_slot >= 0) cloud.labels.push_back(detail::label_from_value(label));
        }
    }
    return cloud;
}

inline PointCloud read_ply(const std::string& path) {
    auto in = detail::open_input(path, true);
    return read_ply(in);
}

// Coordinates are written as double; labels, when present, as int.
inline void write_ply(const PointCloud& cloud, std::ostream& out, bool binary) {
    out << "ply\n";
    out << (binary ? "format binary_little_endian 1.0\n" : "format ascii 1.0\n");
    out << "element vertex " << cloud.size() << "\n";
    out << "property double x\nproperty double y\nproperty double z\n";
    if (cloud.has_labels()) out << "property int label\n";
    out << "end_header\n";

    if (binary) {
        for (std::size_t i = 0; i < cloud.size(); ++i) {
            const Point3& p = cloud.points[i];
            out.write(reinterpret_cast<const char*>(&p.x), 8);
            out.write(reinterpret_cast<const char*>(&p.y), 8);
            out.write(reinterpret_cast<const char*>(&p.z), 8);
            if (cloud.has_labels()) {
                const std::int32_t label = static_cast<std::int32_t>(cloud.labels[i]);
                out.write(reinterpret_cast<const char*>(&label), 4);
            }
        }
    } else {
        std::string buf;
        for (std::size_t i = 0; i < cloud.size(); ++i) {
            const Point3& p = cloud.points[i];
            buf.clear();
            detail::format_double(buf, p.x);
            buf += ' ';
            detail::format_double(buf, p.y);
            buf += ' ';
            detail::format_double(buf, p.z);
            if (cloud.has_labels()) {
                buf += ' ';
                buf += std::to_string(static_cast<int>(cloud.labels[i]));
            }
            buf += '\n';
            out << buf;
        }
    }
}

inline void write_ply(const PointCloud& cloud, const std::string& path, bool binary) {
    auto out = detail::open_output(path, true);
    write_ply(cloud, out, binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
}

// --- format dispatch ------------------------------------------------------------

inline PointCloud read_point_cloud(const std::string& path) {
    const std::string ext = detail::lower_ext(path);
    if (ext == "xyz") return read_xyz(path);
    if (ext == "ply") return read_ply(path);
    throw std::runtime_error("unsupported file format: " + path);
}

inline void write_point_cloud(const PointCloud& cloud, const std::string& path, bool binary_ply = false) {
    const std::string ext = detail::lower_ext(path);
    if (ext == "xyz") return write_xyz(cloud, path);
    if (ext == "ply") return write_ply(cloud, path, binary_ply);
    throw std::runtime_error("unsupported file format: " + path);
}

// --- meshes (OFF, ASCII PLY) -----------------------------------------------------

namespace detail {

inline void validate_triangle(const long long idx[3], std::size_t vertex_count, std::size_t line_no) {
    for (int e = 0; e < 3; ++e)
        if (idx[e] < 0 || idx[e] >= static_cast<long long>(vertex_count))
            line_error(line_no, "vertex index out of range");
    if (idx[0] == idx[1] || idx[1] == idx[2] || idx[0] == idx[2])
        line_error(line_no, "degenerate triangle");
}

} // namespace detail

inline TriangleMesh read_off(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    auto next_content = [&]() -> std::vector<std::string> {
        while (detail::next_line(in, line, line_no)) {
            const std::size_t first = line.find_first_not_of(" \t");
            if (first == std::string::npos || line[first] == '#') continue;
            return detail::split_tokens(line);
        }
        detail::line_error(line_no + 1, "unexpected end of file");
    };

    auto tokens = next_content();
    if (tokens.size() != 1 || tokens[0] != "OFF") detail::line_error(line_no, "not an OFF file");
    tokens = next_content();
    long long nv = 0, nf = 0, ne = 0;
    if (tokens.size() != 3 || !detail::parse_long(tokens[0], nv) || !detail::parse_long(tokens[1], nf) ||
        !detail::parse_long(tokens[2], ne) || nv < 0 || nf < 0)
        detail::line_error(line_no, "malformed counts line");

    TriangleMesh mesh;
    mesh.vertices.reserve(nv);
    for (long long i = 0; i < nv; ++i) {
        tokens = next_content();
        if (tokens.size() != 3) detail::line_error(line_no, "expected 3 coordinates");
        Point3 p;
        for (int a = 0; a < 3; ++a)
            if (!detail::parse_double(tokens[a], p[a])) detail::line_error(line_no, "invalid number: " + tokens[a]);
        if (!is_finite(p)) detail::line_error(line_no, "invalid point");
        mesh.vertices.push_back(p);
    }
    mesh.triangles.reserve(nf);
    for (long long i = 0; i < nf; ++i) {
        tokens = next_content();
        long long k = 0;
        if (tokens.empty() || !detail::parse_long(tokens[0], k)) detail::line_error(line_no, "malformed face line");
        if (k != 3) detail::line_error(line_no, "non-triangular face");
        if (tokens.size() < 4) detail::line_error(line_no, "malformed face line");
        long long idx[3];
        for (int e = 0; e < 3; ++e)
            if (!detail::parse_long(tokens[1 + e], idx[e])) detail::line_error(line_no, "invalid index: " + tokens[1 + e]);
        detail::validate_triangle(idx, mesh.vertices.size(), line_no);
        mesh.triangles.push_back({static_cast<std::int32_t>(idx[0]), static_cast<std::int32_t>(idx[1]),
                                  static_cast<std::int32_t>(idx[2])});
    }
    return mesh;
}

inline TriangleMesh read_off(const std::string& path) {
    auto in = detail::open_input(path, false);
    return read_off(in);
}

inline void write_off(const TriangleMesh& mesh, std::ostream& out) {
    out << "OFF\n" << mesh.vertices.size() << ' ' << mesh.triangles.size() << " 0\n";
    std::string buf;
    for (const Point3& p : mesh.vertices) {
        buf.clear();
        detail::format_double(buf, p.x);
        buf += ' ';
        detail::format_double(buf, p.y);
        buf += ' ';
        detail::format_double(buf, p.z);
        buf += '\n';
        out << buf;
    }
    for (const auto& tri : mesh.triangles)
        out << "3 " << tri[0] << ' ' << tri[1] << ' ' << tri[2] << '\n';
}

inline void write_off(const TriangleMesh& mesh, const std::string& path) {
    auto out = detail::open_output(path, false);
    write_off(mesh, out);
    if (!out) throw std::runtime_error("cannot write file: " + path);
}

// ASCII PLY mesh: vertex element with x, y, z and a face element with a
// vertex index list. Binary meshes are not supported.
inline TriangleMesh read_mesh_ply(std::istream& in) {
    const detail::PlyHeader header = detail::read_ply_header(in);
    if (header.binary) throw std::runtime_error("unsupported encoding");
    const detail::PlyElement* vertex = nullptr;
    const detail::PlyElement* face = nullptr;
    for (const auto& elem : header.elements) {
        if (elem.name == "vertex") vertex = &elem;
        else if (elem.name == "face") face = &elem;
        else throw std::runtime_error("unsupported element: " + elem.name);
    }
    if (!vertex) throw std::runtime_error("missing vertex element");
    if (!face) throw std::runtime_error("missing face element");

    int coord_slot[3] = {-1, -1, -1};
    for (std::size_t pi = 0; pi < vertex->properties.size(); ++pi) {
        const auto& prop = vertex->properties[pi];
        if (prop.is_list) continue;
        if (prop.name == "x" || prop.name == "y" || prop.name == "z")
            coord_slot[prop.name[0] - 'x'] = static_cast<int>(pi);
    }
    for (int a = 0; a < 3; ++a)
        if (coord_slot[a] < 0) throw std::runtime_error("missing vertex coordinate property");

    int list_slot = -1;
    for (std::size_t pi = 0; pi < face->properties.size(); ++pi) {
        const auto& prop = face->properties[pi];
        if (prop.is_list && (prop.name == "vertex_indices" || prop.name == "vertex_index"))
            list_slot = static_cast<int>(pi);
    }
    if (list_slot < 0) throw std::runtime_error("missing face index list property");

    TriangleMesh mesh;
    mesh.vertices.reserve(vertex->count);
    std::string line;
    std::size_t line_no = header.line_count;
    for (std::size_t i = 0; i < vertex->count; ++i) {
        if (!detail::next_line(in, line, line_no)) detail::line_error(line_no + 1, "missing vertex row");
        const auto tokens = detail::split_tokens(line);
        Point3 p;
        for (int a = 0; a < 3; ++a) {
            if (static_cast<std::size_t>(coord_slot[a]) >= tokens.size())
                detail::line_error(line_no, "too few values in vertex row");
            if (!detail::parse_double(tokens[coord_slot[a]], p[a]))
                detail::line_error(line_no, "invalid number: " + tokens[coord_slot[a]]);
        }
        if (!is_finite(p)) detail::line_error(line_no, "invalid point");
        mesh.vertices.push_back(p);
    }
    mesh.triangles.reserve(face->count);
    for (std::size_t i = 0; i < face->count; ++i) {
        if (!detail::next_line(in, line, line_no)) detail::line_error(line_no + 1, "missing face row");
        const auto tokens = detail::split_tokens(line);
        std::size_t ti = 0;
        long long idx[3] = {0, 0, 0};
        bool got = false;
        for (std::size_t pi = 0; pi < face->properties.size(); ++pi) {
            const auto& prop = face->properties[pi];
            if (!prop.is_list) {
                ++ti;
                continue;
            }
            long long k = 0;
            if (ti >= tokens.size() || !detail::parse_long(tokens[ti++], k))
                detail::line_error(line_no, "malformed face row");
            if (static_cast<int>(pi) == list_slot) {
                if (k != 3) detail::line_error(line_no, "non-triangular face");
                for (int e = 0; e < 3; ++e)
                    if (ti >= tokens.size() || !detail::parse_long(tokens[ti++], idx[e]))
                        detail::line_error(line_no, "malformed face row");
                got = true;
            } else {
                ti += static_cast<std::size_t>(k);
            }
        }
        if (!got) detail::line_error(line_no, "malformed face row");
        detail::validate_triangle(idx, mesh.vertices.size(), line_no);
        mesh.triangles.push_back({static_cast<std::int32_t>(idx[0]), static_cast<std::int32_t>(idx[1]),
                                  static_cast<std::int32_t>(idx[2])});
    }
    return mesh;
}

inline TriangleMesh read_mesh_ply(const std::string& path) {
    auto in = detail::open_input(path, false);
    return read_mesh_ply(in);
}

inline void write_mesh_ply(const TriangleMesh& mesh, std::ostream& out) {
    out << "ply\nformat ascii 1.0\n";
    out << "element vertex " << mesh.vertices.size() << "\n";
    out << "property double x\nproperty double y\nproperty double z\n";
    out << "element face " << mesh.triangles.size() << "\n";
    out << "property list uchar int vertex_indices\n";
    out << "end_header\n";
    std::string buf;
    for (const Point3& p : mesh.vertices) {
        buf.clear();
        detail::format_double(buf, p.x);
        buf += ' ';
        detail::format_double(buf, p.y);
        buf += ' ';
        detail::format_double(buf, p.z);
        buf += '\n';
        out << buf;
    }
    for (const auto& tri : mesh.triangles)
        out << "3 " << tri[0] << ' ' << tri[1] << ' ' << tri[2] << '\n';
}

inline void write_mesh_ply(const TriangleMesh& mesh, const std::string& path) {
    auto out = detail::open_output(path, false);
    write_mesh_ply(mesh, out);
    if (!out) throw std::runtime_error("cannot write file: " + path);
}

inline TriangleMesh read_mesh(const std::string& path) {
    const std::string ext = detail::lower_ext(path);
    if (ext == "off") return read_off(path);
    if (ext == "ply") return read_mesh_ply(path);
    throw std::runtime_error("unsupported file format: " + path);
}

inline void write_mesh(const TriangleMesh& mesh, const std::string& path) {
    const std::string ext = detail::lower_ext(path);
    if (ext == "off") return write_off(mesh, path);
    if (ext == "ply") return write_mesh_ply(mesh, path);
    throw std::runtime_error("unsupported file format: " + path);
}

} // namespace pcdn
