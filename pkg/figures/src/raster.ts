// Software rasterizer: an RGB pixel buffer plus the primitives the figure
// renderers need (rectangles, Bresenham polylines, bitmap text).

import { FONT_HEIGHT, GLYPHS } from "./font.js";
import { Rgb } from "./style.js";

export class Canvas {
  width: number;
  height: number;
  data: Uint8Array;

  constructor(width: number, height: number, fill: Rgb) {
    this.width = width;
    this.height = height;
    this.data = new Uint8Array(3 * width * height);
    for (let i = 0; i < width * height; i++) {
      this.data[3 * i] = fill[0];
      this.data[3 * i + 1] = fill[1];
      this.data[3 * i + 2] = fill[2];
    }
  }

  setPixel(x: number, y: number, color: Rgb) {
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) {
      return;
    }
    const i = 3 * (y * this.width + x);
    this.data[i] = color[0];
    this.data[i + 1] = color[1];
    this.data[i + 2] = color[2];
  }

  getPixel(x: number, y: number): Rgb {
    const i = 3 * (y * this.width + x);
    return [this.data[i], this.data[i + 1], this.data[i + 2]];
  }

  fillRect(x0: number, y0: number, w: number, h: number, color: Rgb) {
    for (let y = y0; y < y0 + h; y++) {
      for (let x = x0; x < x0 + w; x++) {
        this.setPixel(x, y, color);
      }
    }
  }

  vline(x: number, y0: number, y1: number, color: Rgb) {
    const [a, b] = y0 <= y1 ? [y0, y1] : [y1, y0];
    for (let y = a; y <= b; y++) {
      this.setPixel(x, y, color);
    }
  }

  hline(y: number, x0: number, x1: number, color: Rgb) {
    const [a, b] = x0 <= x1 ? [x0, x1] : [x1, x0];
    for (let x = a; x <= b; x++) {
      this.setPixel(x, y, color);
    }
  }

  line(x0: number, y0: number, x1: number, y1: number, color: Rgb) {
    let x = Math.round(x0);
    let y = Math.round(y0);
    const xe = Math.round(x1);
    const ye = Math.round(y1);
    const dx = Math.abs(xe - x);
    const dy = -Math.abs(ye - y);
    const sx = x < xe ? 1 : -1;
    const sy = y < ye ? 1 : -1;
    let err = dx + dy;
    for (;;) {
      this.setPixel(x, y, color);
      if (x === xe && y === ye) {
        break;
      }
      const e2 = 2 * err;
      if (e2 >= dy) {
        err += dy;
        x += sx;
      }
      if (e2 <= dx) {
        err += dx;
        y += sy;
      }
    }
  }

  polyline(xs: number[], ys: number[], color: Rgb) {
    for (let i = 1; i < xs.length; i++) {
      this.line(xs[i - 1], ys[i - 1], xs[i], ys[i], color);
    }
  }

  text(x: number, y: number, s: string, color: Rgb) {
    let cx = Math.round(x);
    const cy = Math.round(y);
    for (const ch of s) {
      const glyph = GLYPHS[ch.charCodeAt(0)] ?? GLYPHS[63]; // '?'
      for (let row = 0; row < glyph.rows.length; row++) {
        const mask = glyph.rows[row];
        for (let bit = 0; mask >> bit; bit++) {
          if ((mask >> bit) & 1) {
            this.setPixel(cx + bit, cy + row, color);
          }
        }
      }
      cx += glyph.w;
    }
  }

  textWidth(s: string): number {
    let w = 0;
    for (const ch of s) {
      w += (GLYPHS[ch.charCodeAt(0)] ?? GLYPHS[63]).w;
    }
    return w;
  }
}

export const TEXT_HEIGHT = FONT_HEIGHT;
