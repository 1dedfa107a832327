import { describe, expect, it } from "vitest";

import { App } from "../src/app.js";
import { ConfigError, parseConfig } from "../src/config.js";
import { DIMENSION, EmbeddingModel } from "../src/model.js";
import { tokenize } from "../src/tokenizer.js";

describe("config", () => {
  it("applies defaults", () => {
    const config = parseConfig([], {});
    expect(config).toEqual({
      model: "mini-mean-96",
      bind: "127.0.0.1",
      port: 8900,
      maxBatch: 64,
      device: "cpu",
    });
  });

  it("lets flags override environment variables", () => {
    const config = parseConfig(
      ["--model", "other", "--max-batch", "8"],
      { EMBED_SIDECAR_MODEL: "env-model", EMBED_SIDECAR_PORT: "9001" },
    );
    expect(config.model).toBe("other");
    expect(config.port).toBe(9001);
    expect(config.maxBatch).toBe(8);
  });

  it("rejects a zero batch limit", () => {
    expect(() => parseConfig(["--max-batch", "0"], {})).toThrow(ConfigError);
  });

  it("rejects unknown flags and bad numbers", () => {
    expect(() => parseConfig(["--nope", "1"], {})).toThrow(ConfigError);
    expect(() => parseConfig(["--port", "abc"], {})).toThrow(ConfigError);
    expect(() => parseConfig(["--port"], {})).toThrow(ConfigError);
  });
});

describe("tokenizer", () => {
  it("lowercases and separates punctuation", () => {
    expect(tokenize("Hello, world!")).toEqual(["hello", ",", "world", "!"]);
  });

  it("splits long words into marked pieces", () => {
    expect(tokenize("embarrassment")).toEqual(["embarras", "##sment"]);
  });

  it("returns nothing for whitespace", () => {
    expect(tokenize("   \n\t ")).toEqual([]);
  });
});

describe("model", () => {
  const model = new EmbeddingModel("test-model");

  it("serves vectors of the advertised dimension", () => {
    const out = model.embed("a small sentence");
    expect(out.sentenceVector).toHaveLength(DIMENSION);
    for (const vec of out.tokenVectors) expect(vec).toHaveLength(DIMENSION);
    expect(out.tokens.length).toBe(out.tokenVectors.length);
  });

  it("is deterministic across instances with the same id", () => {
    const twin = new EmbeddingModel("test-model");
    const text = "Grief weighs heavy on quiet evenings.";
    expect(twin.embed(text)).toEqual(model.embed(text));
  });

  it("serves a different space under a different id", () => {
    const other = new EmbeddingModel("another-model");
    expect(other.embed("hello").sentenceVector).not.toEqual(
      model.embed("hello").sentenceVector,
    );
  });

  it("mean-pools: a one-token text's sentence vector is its token vector", () => {
    const out = model.embed("hello");
    expect(out.tokens).toHaveLength(1);
    for (let i = 0; i < DIMENSION; i++) {
      expect(Math.abs(out.sentenceVector[i]! - out.tokenVectors[0]![i]!)).toBeLessThan(1e-5);
    }
  });

  it("mean-pools multi-token texts exactly", () => {
    const out = model.embed("two words");
    for (let i = 0; i < DIMENSION; i++) {
      const mean = out.tokenVectors.reduce((acc, vec) => acc + vec[i]!, 0) / out.tokenVectors.length;
      expect(Math.abs(out.sentenceVector[i]! - mean)).toBeLessThan(1e-12);
    }
  });

  it("embeds an empty string as an empty token set and a zero vector", () => {
    const out = model.embed("");
    expect(out.tokens).toEqual([]);
    expect(out.sentenceVector.every((v) => v === 0)).toBe(true);
  });
});

describe("app", () => {
  const config = parseConfig(["--max-batch", "3"], {});
  const app = new App(new EmbeddingModel(config.model), config);

  it("reports model, dimension, and pooling on /healthcheck", () => {
    const reply = app.handle("GET", "/healthcheck", "");
    expect(reply.status).toBe(200);
    expect(reply.body).toEqual({ model: "mini-mean-96", dimension: DIMENSION, pooling: "mean" });
  });

  it("serves sentence embeddings", () => {
    const reply = app.handle("POST", "/v1/embeddings", JSON.stringify({ input: ["hello"] }));
    expect(reply.status).toBe(200);
    const data = (reply.body as { data: { embedding: number[] }[] }).data;
    expect(data).toHaveLength(1);
    expect(data[0]!.embedding).toHaveLength(DIMENSION);
  });

  it("ignores a client-supplied model id", () => {
    const bare = app.handle("POST", "/v1/embeddings", JSON.stringify({ input: ["x"] }));
    const withModel = app.handle(
      "POST", "/v1/embeddings", JSON.stringify({ input: ["x"], model: "whatever" }),
    );
    expect(withModel).toEqual(bare);
  });

  it("serves aligned token embeddings", () => {
    const reply = app.handle(
      "POST", "/token-embeddings", JSON.stringify({ input: ["hello world", "bye"] }),
    );
    expect(reply.status).toBe(200);
    const data = (reply.body as { data: { tokens: string[]; vectors: number[][] }[] }).data;
    expect(data).toHaveLength(2);
    expect(data[0]!.tokens).toEqual(["hello", "world"]);
    expect(data[0]!.vectors).toHaveLength(2);
  });

  it("refuses oversize batches with 413", () => {
    const over = JSON.stringify({ input: ["a", "b", "c", "d"] });
    expect(app.handle("POST", "/v1/embeddings", over).status).toBe(413);
    expect(app.handle("POST", "/token-embeddings", over).status).toBe(413);
    const atLimit = JSON.stringify({ input: ["a", "b", "c"] });
    expect(app.handle("POST", "/v1/embeddings", atLimit).status).toBe(200);
  });

  it("rejects malformed bodies with 400", () => {
    expect(app.handle("POST", "/v1/embeddings", "{not json").status).toBe(400);
    expect(app.handle("POST", "/v1/embeddings", JSON.stringify({ input: [] })).status).toBe(400);
    expect(app.handle("POST", "/v1/embeddings", JSON.stringify({ input: [7] })).status).toBe(400);
    expect(app.handle("POST", "/v1/embeddings", JSON.stringify(["x"])).status).toBe(400);
  });

  it("maps unknown routes to 404 and wrong methods to 405", () => {
    expect(app.handle("GET", "/nope", "").status).toBe(404);
    expect(app.handle("POST", "/healthcheck", "").status).toBe(405);
    expect(app.handle("GET", "/v1/embeddings", "").status).toBe(405);
  });
});
