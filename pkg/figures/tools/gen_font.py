"""Generate src/font.ts from the PIL default bitmap font.

Rasterizes ASCII 32..126 at a shared baseline and emits a TypeScript
table of per-glyph advance widths and row bitmasks (bit 0 = leftmost
pixel column).
"""

from PIL import Image, ImageDraw, ImageFont

CELL = 16


def main():
    font = ImageFont.load_default()
    img = Image.new("1", (CELL, CELL), 0)
    d = ImageDraw.Draw(img)

    glyphs = {}
    max_row = 0
    for code in range(32, 127):
        ch = chr(code)
        img.paste(0, (0, 0, CELL, CELL))
        d.text((0, 0), ch, fill=1, font=font)
        adv = int(round(d.textlength(ch, font=font)))
        rows = []
        for yy in range(CELL):
            mask = 0
            for xx in range(CELL):
                if img.getpixel((xx, yy)):
                    mask |= 1 << xx
            rows.append(mask)
        while rows and rows[-1] == 0:
            rows.pop()
        if rows:
            max_row = max(max_row, len(rows))
        glyphs[code] = (adv, rows)

    height = max_row
    lines = []
    lines.append("// Bitmap font table rasterized from a fixed 8px bitmap face.")
    lines.append("// Each glyph: advance width in pixels plus one bitmask per row,")
    lines.append("// bit i set = pixel at x offset i. Rows share a common baseline.")
    lines.append("")
    lines.append(f"export const FONT_HEIGHT = {height};")
    lines.append("")
    lines.append("export interface Glyph {")
    lines.append("  w: number;")
    lines.append("  rows: number[];")
    lines.append("}")
    lines.append("")
    lines.append("export const GLYPHS: { [code: number]: Glyph } = {")
    for code in range(32, 127):
        adv, rows = glyphs[code]
        rows = rows + [0] * (height - len(rows))
        label = chr(code) if chr(code) != "\\" else "backslash"
        lines.append(f"  {code}: {{ w: {adv}, rows: [{', '.join(str(r) for r in rows)}] }}, // {label}")
    lines.append("};")
    lines.append("")

    with open("src/font.ts", "w") as fh:
        fh.write("\n".join(lines))
    print(f"wrote src/font.ts: {len(glyphs)} glyphs, height {height}")


if __name__ == "__main__":
    main()
