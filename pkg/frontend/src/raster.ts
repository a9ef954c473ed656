/** Minimal software rasterizer and PNG encoder for the optional --png output.
 *
 * The raster mirrors the SVG geometry (frame, grid, curves, markers, error
 * bars) but carries no text; the SVG is the canonical labeled artifact.
 */

import { deflateSync } from "node:zlib";

import { PanelSpec, Series } from "./panels.js";
import { HEIGHT, WIDTH, linearScale, logScale } from "./svg.js";

export class Bitmap {
  readonly data: Uint8Array;

  constructor(
    readonly width: number,
    readonly height: number,
  ) {
    this.data = new Uint8Array(width * height * 3).fill(255);
  }

  set(x: number, y: number, rgb: [number, number, number]): void {
    const xi = Math.round(x);
    const yi = Math.round(y);
    if (xi < 0 || yi < 0 || xi >= this.width || yi >= this.height) return;
    const o = (yi * this.width + xi) * 3;
    this.data[o] = rgb[0];
    this.data[o + 1] = rgb[1];
    this.data[o + 2] = rgb[2];
  }

  line(x0: number, y0: number, x1: number, y1: number, rgb: [number, number, number]): void {
    // Bresenham on rounded endpoints
    let xa = Math.round(x0);
    let ya = Math.round(y0);
    const xb = Math.round(x1);
    const yb = Math.round(y1);
    const dx = Math.abs(xb - xa);
    const dy = -Math.abs(yb - ya);
    const sx = xa < xb ? 1 : -1;
    const sy = ya < yb ? 1 : -1;
    let err = dx + dy;
    for (;;) {
      this.set(xa, ya, rgb);
      if (xa === xb && ya === yb) break;
      const e2 = 2 * err;
      if (e2 >= dy) {
        err += dy;
        xa += sx;
      }
      if (e2 <= dx) {
        err += dx;
        ya += sy;
      }
    }
  }

  disc(cx: number, cy: number, r: number, rgb: [number, number, number]): void {
    for (let y = Math.floor(cy - r); y <= Math.ceil(cy + r); y += 1)
      for (let x = Math.floor(cx - r); x <= Math.ceil(cx + r); x += 1)
        if ((x - cx) ** 2 + (y - cy) ** 2 <= r * r) this.set(x, y, rgb);
  }
}

const CRC_TABLE = (() => {
  const t = new Uint32Array(256);
  for (let n = 0; n < 256; n += 1) {
    let c = n;
    for (let k = 0; k < 8; k += 1) c = c & 1 ? 0xedb88320 ^ (c >>> 1) : c >>> 1;
    t[n] = c >>> 0;
  }
  return t;
})();

function crc32(buf: Uint8Array): number {
  let c = 0xffffffff;
  for (const b of buf) c = CRC_TABLE[(c ^ b) & 0xff] ^ (c >>> 8);
  return (c ^ 0xffffffff) >>> 0;
}

function chunk(type: string, body: Uint8Array): Buffer {
  const head = Buffer.alloc(8);
  head.writeUInt32BE(body.length, 0);
  head.write(type, 4, "ascii");
  const crcInput = Buffer.concat([head.subarray(4), body]);
  const tail = Buffer.alloc(4);
  tail.writeUInt32BE(crc32(crcInput), 0);
  return Buffer.concat([head, body, tail]);
}

/** Encode an RGB bitmap as a deterministic PNG (filter 0, fixed deflate). */
export function encodePng(bmp: Bitmap): Buffer {
  const ihdr = Buffer.alloc(13);
  ihdr.writeUInt32BE(bmp.width, 0);
  ihdr.writeUInt32BE(bmp.height, 4);
  ihdr[8] = 8; // bit depth
  ihdr[9] = 2; // color type: truecolor
  const stride = bmp.width * 3;
  const raw = Buffer.alloc((stride + 1) * bmp.height);
  for (let y = 0; y < bmp.height; y += 1) {
    raw[y * (stride + 1)] = 0;
    raw.set(bmp.data.subarray(y * stride, (y + 1) * stride), y * (stride + 1) + 1);
  }
  const idat = deflateSync(raw, { level: 9 });
  return Buffer.concat([
    Buffer.from([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]),
    chunk("IHDR", ihdr),
    chunk("IDAT", idat),
    chunk("IEND", new Uint8Array(0)),
  ]);
}

function hexColor(c: string): [number, number, number] {
  return [
    parseInt(c.slice(1, 3), 16),
    parseInt(c.slice(3, 5), 16),
    parseInt(c.slice(5, 7), 16),
  ];
}

const COLORS = [
  "#1f77b4",
  "#d62728",
  "#2ca02c",
  "#9467bd",
  "#ff7f0e",
  "#8c564b",
  "#17becf",
  "#7f7f7f",
  "#bcbd22",
  "#e377c2",
].map(hexColor);

/** Render the panel to PNG bytes; same layout as the SVG, minus text. */
export function renderPng(series: Series[], spec: PanelSpec): Buffer {
  const x0 = 68;
  const x1 = WIDTH - 20;
  const y0 = HEIGHT - 52;
  const y1 = 28;
  const bmp = new Bitmap(WIDTH, HEIGHT);

  const xs = series.flatMap((s) => s.points.map((p) => p.x));
  const ys: number[] = [];
  for (const s of series)
    for (const p of s.points) {
      if (!spec.logY || p.y > 0) ys.push(p.y);
      if (p.yMc !== null && (!spec.logY || p.yMc > 0)) ys.push(p.yMc);
    }
  let ylo = Math.min(...ys);
  let yhi = Math.max(...ys);
  if (!spec.logY) {
    ylo = Math.min(0, ylo);
    yhi = yhi + 0.05 * (yhi - ylo || 1);
  } else {
    ylo = Math.pow(10, Math.floor(Math.log10(ylo)));
    yhi = Math.pow(10, Math.ceil(Math.log10(yhi)));
  }
  const sx = linearScale(Math.min(...xs), Math.max(...xs), x0, x1);
  const sy = spec.logY ? logScale(ylo, yhi, y0, y1) : linearScale(ylo, yhi, y0, y1);

  const grid: [number, number, number] = [224, 224, 224];
  const frame: [number, number, number] = [51, 51, 51];
  for (const t of sx.ticks) bmp.line(sx(t), y0, sx(t), y1, grid);
  for (const t of sy.ticks) bmp.line(x0, sy(t), x1, sy(t), grid);
  bmp.line(x0, y0, x1, y0, frame);
  bmp.line(x0, y1, x1, y1, frame);
  bmp.line(x0, y0, x0, y1, frame);
  bmp.line(x1, y0, x1, y1, frame);

  series.forEach((s, i) => {
    const color = COLORS[i % COLORS.length];
    const pts = s.points.filter((p) => !spec.logY || p.y > 0);
    for (let j = 1; j < pts.length; j += 1)
      bmp.line(sx(pts[j - 1].x), sy(pts[j - 1].y), sx(pts[j].x), sy(pts[j].y), color);
    for (const p of s.points) {
      if (p.yMc === null || (spec.logY && p.yMc <= 0)) continue;
      if (p.yMcSe !== null && p.yMcSe > 0) {
        const lo = spec.logY
          ? Math.max(p.yMc - 2 * p.yMcSe, sy.domain[0])
          : p.yMc - 2 * p.yMcSe;
        bmp.line(sx(p.x), sy(lo), sx(p.x), sy(p.yMc + 2 * p.yMcSe), color);
      }
      bmp.disc(sx(p.x), sy(p.yMc), 2.5, color);
    }
  });
  return encodePng(bmp);
}
