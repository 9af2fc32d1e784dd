/** Strict reader for the benchmark summary CSV. */

export interface SummaryRow {
  family: string;
  n: number;
  algorithm: string;
  r: number;
  k: number;
  trials: number;
  mean_interventions: number;
  stderr_interventions: number;
  mean_time_ns: number;
  stderr_time_ns: number;
}

export const REQUIRED_COLUMNS = [
  "family",
  "n",
  "algorithm",
  "r",
  "k",
  "trials",
  "mean_interventions",
  "stderr_interventions",
  "mean_time_ns",
  "stderr_time_ns",
] as const;

export class MissingColumnError extends Error {
  constructor(columns: string[]) {
    super(`summary CSV is missing required column(s): ${columns.join(", ")}`);
    this.name = "MissingColumnError";
  }
}

export function parseSummaryCsv(text: string): SummaryRow[] {
  const lines = text
    .split(/\r?\n/)
    .map((l) => l.trim())
    .filter((l) => l.length > 0);
  if (lines.length === 0) {
    throw new MissingColumnError([...REQUIRED_COLUMNS]);
  }
  const header = lines[0].split(",").map((h) => h.trim());
  const index = new Map(header.map((h, i) => [h, i] as const));
  const missing = REQUIRED_COLUMNS.filter((c) => !index.has(c));
  if (missing.length > 0) {
    throw new MissingColumnError(missing);
  }
  const rows: SummaryRow[] = [];
  for (const line of lines.slice(1)) {
    const cells = line.split(",");
    const pick = (col: string): string => cells[index.get(col)!]?.trim() ?? "";
    const num = (col: string): number => {
      const value = Number(pick(col));
      if (!Number.isFinite(value)) {
        throw new Error(`non-numeric value ${JSON.stringify(pick(col))} in column ${col}`);
      }
      return value;
    };
    rows.push({
      family: pick("family"),
      n: num("n"),
      algorithm: pick("algorithm"),
      r: num("r"),
      k: num("k"),
      trials: num("trials"),
      mean_interventions: num("mean_interventions"),
      stderr_interventions: num("stderr_interventions"),
      mean_time_ns: num("mean_time_ns"),
      stderr_time_ns: num("stderr_time_ns"),
    });
  }
  return rows;
}
