//! Minimal hand-emitted SVG 1.1: polyline paths, circle markers, text.
//! Figures are line art, so no plotting dependency is pulled in.

/// World-coordinate canvas mapped onto a fixed pixel frame, y flipped.
pub struct SvgCanvas {
    px_w: f64,
    px_h: f64,
    margin: f64,
    x_min: f64,
    x_max: f64,
    y_min: f64,
    y_max: f64,
    desc: String,
    body: String,
}

impl SvgCanvas {
    pub fn new(bbox: (f64, f64, f64, f64), px_w: f64) -> SvgCanvas {
        let (x_min, x_max, y_min, y_max) = bbox;
        let aspect = (y_max - y_min) / (x_max - x_min);
        SvgCanvas {
            px_w,
            px_h: (px_w * aspect).max(120.0),
            margin: 40.0,
            x_min,
            x_max,
            y_min,
            y_max,
            desc: String::new(),
            body: String::new(),
        }
    }

    pub fn set_desc(&mut self, text: &str) {
        self.desc = text.to_string();
    }

    fn tx(&self, x: f64) -> f64 {
        self.margin + (x - self.x_min) / (self.x_max - self.x_min) * self.px_w
    }

    fn ty(&self, y: f64) -> f64 {
        self.margin + (self.y_max - y) / (self.y_max - self.y_min) * self.px_h
    }

    pub fn path(&mut self, pts: &[(f64, f64)], stroke: &str, width: f64, dash: Option<&str>) {
        if pts.is_empty() {
            return;
        }
        let mut d = String::new();
        for (i, &(x, y)) in pts.iter().enumerate() {
            let cmd = if i == 0 { 'M' } else { 'L' };
            d.push_str(&format!("{cmd}{:.3} {:.3} ", self.tx(x), self.ty(y)));
        }
        let dash_attr = dash.map_or(String::new(), |p| format!(" stroke-dasharray=\"{p}\""));
        self.body.push_str(&format!(
            "<path d=\"{}\" fill=\"none\" stroke=\"{stroke}\" stroke-width=\"{width}\"{dash_attr}/>\n",
            d.trim_end()
        ));
    }

    /// Marker with the world coordinates kept in data attributes at full
    /// precision so consumers do not need to invert the pixel transform.
    pub fn marker(&mut self, (x, y): (f64, f64), r_px: f64, fill: &str) {
        self.body.push_str(&format!(
            "<circle cx=\"{:.3}\" cy=\"{:.3}\" r=\"{r_px}\" fill=\"{fill}\" data-re=\"{:.16e}\" data-im=\"{:.16e}\"/>\n",
            self.tx(x),
            self.ty(y),
            x,
            y
        ));
    }

    pub fn text_px(&mut self, x_px: f64, y_px: f64, s: &str, color: &str) {
        self.body.push_str(&format!(
            "<text x=\"{x_px:.1}\" y=\"{y_px:.1}\" font-family=\"monospace\" font-size=\"12\" fill=\"{color}\">{s}</text>\n"
        ));
    }

    pub fn legend(&mut self, entries: &[(&str, String)]) {
        let x = self.margin + 10.0;
        let mut y = self.margin + 16.0;
        for (color, label) in entries {
            self.body.push_str(&format!(
                "<rect x=\"{x:.1}\" y=\"{:.1}\" width=\"14\" height=\"4\" fill=\"{color}\"/>\n",
                y - 4.0
            ));
            self.text_px(x + 20.0, y, label, "#333333");
            y += 16.0;
        }
    }

    pub fn axes(&mut self) {
        if self.x_min < 0.0 && self.x_max > 0.0 {
            let x = self.tx(0.0);
            self.body.push_str(&format!(
                "<line x1=\"{x:.3}\" y1=\"{:.3}\" x2=\"{x:.3}\" y2=\"{:.3}\" stroke=\"#cccccc\" stroke-width=\"0.5\"/>\n",
                self.ty(self.y_max),
                self.ty(self.y_min)
            ));
        }
        if self.y_min < 0.0 && self.y_max > 0.0 {
            let y = self.ty(0.0);
            self.body.push_str(&format!(
                "<line x1=\"{:.3}\" y1=\"{y:.3}\" x2=\"{:.3}\" y2=\"{y:.3}\" stroke=\"#cccccc\" stroke-width=\"0.5\"/>\n",
                self.tx(self.x_min),
                self.tx(self.x_max)
            ));
        }
    }

    pub fn finish(self) -> String {
        let w = self.px_w + 2.0 * self.margin;
        let h = self.px_h + 2.0 * self.margin;
        format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.0} {h:.0}\">\n<desc>{}</desc>\n<rect width=\"{w:.0}\" height=\"{h:.0}\" fill=\"white\"/>\n{}</svg>\n",
            self.desc, self.body
        )
    }
}
