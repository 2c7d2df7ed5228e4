// Concentration-profile CSV parsing. The first column is the time grid;
// every later column is one plotted series. Values pass through
// unchanged: the chart must show exactly what the service computed.

export interface ProfileTable {
  header: string[];
  time: number[];
  series: { name: string; values: number[] }[];
  rowCount: number;
}

export class BadCsv extends Error {}

export function parseProfileCsv(text: string): ProfileTable {
  const lines = text.split("\n").filter((line) => line.trim() !== "");
  if (lines.length < 2) {
    throw new BadCsv("profile CSV needs a header and at least one row");
  }
  const header = lines[0].split(",").map((h) => h.trim());
  if (header.length < 2) {
    throw new BadCsv("profile CSV needs a time column and at least one series");
  }
  const columns: number[][] = header.map(() => []);
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i].split(",");
    if (cells.length !== header.length) {
      throw new BadCsv(`row ${i} has ${cells.length} cells, expected ${header.length}`);
    }
    for (let c = 0; c < cells.length; c++) {
      const value = Number(cells[c]);
      if (!Number.isFinite(value)) {
        throw new BadCsv(`row ${i} column ${header[c]}: not a number: ${cells[c]}`);
      }
      columns[c].push(value);
    }
  }
  return {
    header,
    time: columns[0],
    series: header.slice(1).map((name, idx) => ({ name, values: columns[idx + 1] })),
    rowCount: lines.length - 1,
  };
}
