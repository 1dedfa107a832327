/** Transport-independent request handling.
 *
 * Routes:
 *   GET  /healthcheck      -> {model, dimension, pooling}
 *   POST /v1/embeddings    -> {data: [{embedding: number[]}, ...]}
 *   POST /token-embeddings -> {data: [{tokens: string[], vectors: number[][]}, ...]}
 *
 * Request bodies carry {input: string[]} (an optional "model" key is
 * accepted and ignored: the served model is fixed at startup). Batches
 * larger than the configured maximum are refused with 413.
 */

import type { SidecarConfig } from "./config.js";
import type { EmbeddingModel } from "./model.js";

export interface JsonReply {
  status: number;
  body: unknown;
}

function error(status: number, message: string): JsonReply {
  return { status, body: { error: message } };
}

export class App {
  constructor(
    private readonly model: EmbeddingModel,
    private readonly config: SidecarConfig,
  ) {}

  handle(method: string, path: string, rawBody: string): JsonReply {
    if (path === "/healthcheck") {
      if (method !== "GET") return error(405, "healthcheck only supports GET");
      return {
        status: 200,
        body: {
          model: this.model.modelId,
          dimension: this.model.dimension,
          pooling: this.model.pooling,
        },
      };
    }
    if (path === "/v1/embeddings" || path === "/token-embeddings") {
      if (method !== "POST") return error(405, `${path} only supports POST`);
      const parsed = this.parseInput(rawBody);
      if ("reply" in parsed) return parsed.reply;
      const outputs = parsed.input.map((text) => this.model.embed(text));
      if (path === "/v1/embeddings") {
        return {
          status: 200,
          body: { data: outputs.map((out) => ({ embedding: out.sentenceVector })) },
        };
      }
      return {
        status: 200,
        body: {
          data: outputs.map((out) => ({ tokens: out.tokens, vectors: out.tokenVectors })),
        },
      };
    }
    return error(404, `no route for ${path}`);
  }

  private parseInput(rawBody: string): { input: string[] } | { reply: JsonReply } {
    let body: unknown;
    try {
      body = JSON.parse(rawBody);
    } catch {
      return { reply: error(400, "request body is not valid JSON") };
    }
    if (typeof body !== "object" || body === null || Array.isArray(body)) {
      return { reply: error(400, "request body must be a JSON object") };
    }
    const input = (body as Record<string, unknown>).input;
    if (!Array.isArray(input) || input.length === 0) {
      return { reply: error(400, "input must be a non-empty array of strings") };
    }
    if (!input.every((item) => typeof item === "string")) {
      return { reply: error(400, "input must contain only strings") };
    }
    if (input.length > this.config.maxBatch) {
      return {
        reply: error(413, `batch of ${input.length} exceeds the maximum of ${this.config.maxBatch}`),
      };
    }
    return { input: input as string[] };
  }
}
