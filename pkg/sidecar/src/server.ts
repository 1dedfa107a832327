/** HTTP wiring and process entry point. */

import http from "node:http";
import path from "node:path";
import { fileURLToPath } from "node:url";

import { App } from "./app.js";
import { ConfigError, parseConfig, type SidecarConfig } from "./config.js";
import { EmbeddingModel } from "./model.js";

const MAX_BODY_BYTES = 4 * 1024 * 1024;

export function createServer(config: SidecarConfig): http.Server {
  const model = new EmbeddingModel(config.model);
  const app = new App(model, config);

  return http.createServer((request, response) => {
    const chunks: Buffer[] = [];
    let size = 0;
    let refused = false;
    request.on("data", (chunk: Buffer) => {
      size += chunk.length;
      if (size > MAX_BODY_BYTES) {
        refused = true;
        writeJson(response, 413, { error: "request body too large" });
        request.destroy();
        return;
      }
      chunks.push(chunk);
    });
    request.on("end", () => {
      if (refused) return;
      const body = Buffer.concat(chunks).toString("utf-8");
      const url = new URL(request.url ?? "/", `http://${request.headers.host ?? "localhost"}`);
      try {
        const reply = app.handle(request.method ?? "GET", url.pathname, body);
        writeJson(response, reply.status, reply.body);
      } catch (exc) {
        writeJson(response, 500, { error: String(exc) });
      }
    });
    request.on("error", () => {
      if (!response.headersSent) writeJson(response, 400, { error: "request aborted" });
    });
  });
}

function writeJson(response: http.ServerResponse, status: number, body: unknown): void {
  const payload = JSON.stringify(body);
  response.writeHead(status, {
    "content-type": "application/json",
    "content-length": Buffer.byteLength(payload),
  });
  response.end(payload);
}

export function main(argv: string[]): void {
  let config: SidecarConfig;
  let server: http.Server;
  try {
    config = parseConfig(argv, process.env);
    server = createServer(config); // generates the model weights up front
  } catch (exc) {
    const prefix = exc instanceof ConfigError ? "config error" : "startup failed";
    console.error(`${prefix}: ${exc instanceof Error ? exc.message : exc}`);
    process.exit(1);
  }
  server.listen(config.port, config.bind, () => {
    console.error(
      `embed-sidecar serving model ${config.model} on http://${config.bind}:${config.port}`,
    );
  });
  server.on("error", (exc) => {
    console.error(`startup failed: ${exc.message}`);
    process.exit(1);
  });
}

const entry = process.argv[1];
if (entry && path.resolve(entry) === fileURLToPath(import.meta.url)) {
  main(process.argv.slice(2));
}
