#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "unlearn_eval/backends/interfaces.hpp"
#include "unlearn_eval/core/errors.hpp"

namespace unlearn_eval {

// Adapter for a live vision-language encoder served over HTTP. Server
// contract:
//   GET  /info         -> {"model_id": str, "embedding_dim": int, "normalizes": bool}
//   POST /embed_text   -> body {"text": str},     reply {"embedding": [float...]}
//   POST /embed_image  -> body = raw image bytes, reply {"embedding": [float...]}
// Results are backend-relative; reports record model_id.
class HttpEmbedder final : public ImageEmbedder {
public:
    explicit HttpEmbedder(const std::string& server) : server_(server), client_(server.c_str()) {
        client_.set_connection_timeout(5, 0);
        client_.set_read_timeout(30, 0);
        auto res = client_.Get("/info");
        if (!res || res->status != 200) {
            throw Error(ErrorCode::BackendUnavailable,
                        "embedding server not reachable at " + server_);
        }
        const auto info = nlohmann::json::parse(res->body);
        model_id_ = info.at("model_id").get<std::string>();
        dim_ = info.at("embedding_dim").get<std::size_t>();
        normalizes_ = info.value("normalizes", false);
    }

    std::string model_id() const override { return "http/" + model_id_; }
    std::size_t embedding_dim() const override { return dim_; }
    bool normalizes() const override { return normalizes_; }

    std::vector<Embedding> embed_images(const ImageSet& images) override {
        require(!images.empty(), ErrorCode::PreconditionFailed, "embed_images: empty image set");
        std::vector<Embedding> out;
        out.reserve(images.size());
        for (std::size_t i = 0; i < images.size(); ++i) {
            const ImageRef& ref = images.items[i];
            require(!ref.path.empty(), ErrorCode::DecodeError, i,
                    "http embedder needs file-backed images");
            std::ifstream in(ref.path, std::ios::binary);
            if (!in) throw Error(ErrorCode::DecodeError, i, "cannot open " + ref.path);
            std::ostringstream buf;
            buf << in.rdbuf();
            auto res = client_.Post("/embed_image", buf.str(), "application/octet-stream");
            if (!res || res->status != 200) {
                throw Error(ErrorCode::BackendUnavailable, "embed_image failed for " + ref.path);
            }
            out.push_back(parse_embedding(res->body, i));
        }
        return out;
    }

    Embedding embed_text(const std::string& text) override {
        require(!text.empty(), ErrorCode::PreconditionFailed, "embed_text: empty text");
        const nlohmann::json body = {{"text", text}};
        auto res = client_.Post("/embed_text", body.dump(), "application/json");
        if (!res || res->status != 200) {
            throw Error(ErrorCode::BackendUnavailable, "embed_text failed");
        }
        return parse_embedding(res->body, 0);
    }

private:
    Embedding parse_embedding(const std::string& body, std::size_t index) const {
        Embedding v;
        try {
            v = nlohmann::json::parse(body).at("embedding").get<Embedding>();
        } catch (const std::exception& e) {
            throw Error(ErrorCode::BackendUnavailable,
                        std::string("malformed embedding reply: ") + e.what());
        }
        if (v.size() != dim_) {
            throw Error(ErrorCode::DimensionMismatch, index,
                        "server returned dim " + std::to_string(v.size()) + ", expected " +
                            std::to_string(dim_));
        }
        return v;
    }

    std::string server_;
    httplib::Client client_;
    std::string model_id_;
    std::size_t dim_ = 0;
    bool normalizes_ = false;
};

}  // namespace unlearn_eval
