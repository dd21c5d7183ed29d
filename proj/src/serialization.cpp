#include "hgsg/serialization.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "hgsg/errors.hpp"

namespace hgsg {

namespace {

using nlohmann::json;

const char* status_name(IndexStatus s) {
    switch (s) {
        case IndexStatus::Active: return "active";
        case IndexStatus::Old: return "old";
        case IndexStatus::Discarded: return "discarded";
    }
    return "old";
}

IndexStatus parse_status(const std::string& s) {
    if (s == "active") return IndexStatus::Active;
    if (s == "old") return IndexStatus::Old;
    if (s == "discarded") return IndexStatus::Discarded;
    throw config_error("grid file: unknown index status '" + s + "'");
}

}  // namespace

std::string serialize_grid(const GridState& state) {
    json doc;
    doc["format"] = "hgsg-grid-state";
    doc["version"] = 1;
    doc["dimension"] = state.dimension();
    doc["p_max"] = state.rule().p_max;

    json indices = json::array();
    for (const auto& entry : state.index_entries()) {
        json e;
        json dims = json::array(), levels = json::array();
        for (const auto& [d, l] : entry.index.nonzero()) {
            dims.push_back(d);
            levels.push_back(l);
        }
        e["dims"] = std::move(dims);
        e["levels"] = std::move(levels);
        e["status"] = status_name(entry.status);
        indices.push_back(std::move(e));
    }
    doc["indices"] = std::move(indices);

    json records = json::array();
    for (const SurplusRecord& rec : state.records()) {
        json r;
        json dims = json::array(), levels = json::array(), positions = json::array();
        for (const auto& [d, c] : rec.point.nonroot()) {
            dims.push_back(d);
            levels.push_back(c.level);
            positions.push_back(c.pos);
        }
        r["dims"] = std::move(dims);
        r["levels"] = std::move(levels);
        r["positions"] = std::move(positions);
        r["f"] = rec.f_value;
        r["surplus"] = rec.surplus;
        r["weight"] = rec.weight;
        r["active"] = rec.cls == PointClass::Active;
        records.push_back(std::move(r));
    }
    doc["records"] = std::move(records);
    return doc.dump(1) + "\n";
}

void save_grid(const GridState& state, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw config_error("cannot open grid file for writing: " + path);
    out << serialize_grid(state);
}

GridState deserialize_grid(const std::string& text) {
    json doc = json::parse(text);
    if (doc.value("format", "") != std::string("hgsg-grid-state"))
        throw config_error("grid file: unrecognized format tag");
    std::int32_t dim = doc.at("dimension").get<std::int32_t>();
    DegreeRule rule{doc.at("p_max").get<std::int32_t>()};
    GridState state(dim, rule);

    for (const json& e : doc.at("indices")) {
        std::vector<std::pair<std::int32_t, std::int32_t>> nz;
        const json& dims = e.at("dims");
        const json& levels = e.at("levels");
        for (std::size_t k = 0; k < dims.size(); ++k)
            nz.emplace_back(dims[k].get<std::int32_t>(), levels[k].get<std::int32_t>());
        std::uint32_t id = state.ensure_index(MultiIndex::from_nonzero(dim, std::move(nz)));
        state.set_index_status(id, parse_status(e.at("status").get<std::string>()));
    }

    for (const json& r : doc.at("records")) {
        LatticePoint p(dim);
        const json& dims = r.at("dims");
        const json& levels = r.at("levels");
        const json& positions = r.at("positions");
        for (std::size_t k = 0; k < dims.size(); ++k)
            p = p.with_coord(dims[k].get<std::int32_t>(),
                             Coord1D{levels[k].get<std::int32_t>(),
                                     positions[k].get<std::int64_t>()});
        state.insert_raw(p, r.at("f").get<double>(), r.at("surplus").get<double>(),
                         r.at("weight").get<double>(),
                         r.at("active").get<bool>() ? PointClass::Active
                                                    : PointClass::Redundant);
    }
    return state;
}

GridState load_grid(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot open grid file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return deserialize_grid(buf.str());
}

}  // namespace hgsg
