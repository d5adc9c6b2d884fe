#include "jetinv/json_io.hpp"

#include <fstream>
#include <sstream>

namespace jetinv {

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return Json::parse(ss.str());
    } catch (const nlohmann::json::exception& e) {
        throw Error("invalid JSON in '" + path + "': " + e.what());
    }
}

}  // namespace jetinv
