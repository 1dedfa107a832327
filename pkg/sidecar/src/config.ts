/** Service configuration from flags and environment variables.
 *
 * Flags win over environment variables; both fall back to defaults. The
 * device field is a hint passed through to /healthcheck consumers; this
 * implementation always computes on the CPU.
 */

export interface SidecarConfig {
  model: string;
  bind: string;
  port: number;
  maxBatch: number;
  device: string;
}

export class ConfigError extends Error {}

const DEFAULTS: SidecarConfig = {
  model: "mini-mean-96",
  bind: "127.0.0.1",
  port: 8900,
  maxBatch: 64,
  device: "cpu",
};

const FLAG_NAMES = new Set(["--model", "--bind", "--port", "--max-batch", "--device"]);

function parseIntStrict(raw: string, name: string): number {
  if (!/^\d+$/.test(raw)) throw new ConfigError(`${name} must be a non-negative integer, got ${JSON.stringify(raw)}`);
  return parseInt(raw, 10);
}

export function parseConfig(argv: string[], env: NodeJS.ProcessEnv): SidecarConfig {
  const config: SidecarConfig = { ...DEFAULTS };

  if (env.EMBED_SIDECAR_MODEL) config.model = env.EMBED_SIDECAR_MODEL;
  if (env.EMBED_SIDECAR_BIND) config.bind = env.EMBED_SIDECAR_BIND;
  if (env.EMBED_SIDECAR_PORT) config.port = parseIntStrict(env.EMBED_SIDECAR_PORT, "EMBED_SIDECAR_PORT");
  if (env.EMBED_SIDECAR_MAX_BATCH) {
    config.maxBatch = parseIntStrict(env.EMBED_SIDECAR_MAX_BATCH, "EMBED_SIDECAR_MAX_BATCH");
  }
  if (env.EMBED_SIDECAR_DEVICE) config.device = env.EMBED_SIDECAR_DEVICE;

  for (let i = 0; i < argv.length; i += 2) {
    const flag = argv[i]!;
    if (!FLAG_NAMES.has(flag)) throw new ConfigError(`unknown flag ${flag}`);
    const value = argv[i + 1];
    if (value === undefined) throw new ConfigError(`${flag} needs a value`);
    switch (flag) {
      case "--model": config.model = value; break;
      case "--bind": config.bind = value; break;
      case "--port": config.port = parseIntStrict(value, "--port"); break;
      case "--max-batch": config.maxBatch = parseIntStrict(value, "--max-batch"); break;
      case "--device": config.device = value; break;
    }
  }

  if (!config.model) throw new ConfigError("model id must be non-empty");
  if (config.maxBatch < 1) throw new ConfigError("max batch size must be at least 1");
  if (config.port < 0 || config.port > 65535) throw new ConfigError(`port out of range: ${config.port}`);
  return config;
}
