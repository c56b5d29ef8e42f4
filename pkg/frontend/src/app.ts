import type { HistogramSide, ReportBundle, ViewState } from './types.js'
import { FetchFailure, SchemaMismatch, loadBundle } from './bundle.js'
import { decodeState, defaultState, encodeState, sanitizeState } from './state.js'
import { renderHistogramView } from './views/histogram.js'
import { renderTotalsView } from './views/totals.js'
import { renderTraceView } from './views/trace.js'

export function renderErrorPanel(container: HTMLElement, error: Error): void {
    container.replaceChildren()
    const panel = document.createElement('div')
    panel.className = 'error-panel'
    const heading = document.createElement('h2')
    heading.textContent = 'could not load report'
    panel.appendChild(heading)
    const detail = document.createElement('pre')
    detail.textContent = `${error.name}: ${error.message}`
    panel.appendChild(detail)
    container.appendChild(panel)
}

export class App {
    public state: ViewState
    private readonly container: HTMLElement
    private readonly bundle: ReportBundle

    constructor(container: HTMLElement, bundle: ReportBundle) {
        this.container = container
        this.bundle = bundle
        this.state = window.location.hash
            ? decodeState(window.location.hash, bundle)
            : defaultState(bundle)
        window.addEventListener('hashchange', () => {
            if (window.location.hash !== encodeState(this.state)) {
                this.state = decodeState(window.location.hash, this.bundle)
                this.render()
            }
        })
        this.render()
    }

    public navigate(next: Partial<ViewState>): void {
        this.state = sanitizeState({ ...this.state, ...next }, this.bundle)
        window.location.hash = encodeState(this.state)
        this.render()
    }

    private selectMetric(metric: string): void {
        // bin indexes are meaningless across histograms, so drop the bin
        this.navigate({ selected_metric: metric, selected_bin: null })
    }

    private selectBin(side: HistogramSide, index: number): void {
        this.navigate({ selected_bin: { side, index }, selected_function: null })
    }

    private selectFunction(fid: string): void {
        this.navigate({ selected_function: fid })
    }

    private header(): HTMLElement {
        const header = document.createElement('header')
        const title = document.createElement('h1')
        title.textContent = `${this.bundle.pair.label_a} vs ${this.bundle.pair.label_b}`
        header.appendChild(title)
        const meta = document.createElement('p')
        meta.className = 'meta'
        meta.textContent =
            `alpha = ${String(this.bundle.alpha)}, budget ${String(this.bundle.budget)}, ` +
            `campaign ${this.bundle.fingerprint}`
        header.appendChild(meta)
        return header
    }

    private metricSelector(): HTMLElement {
        const nav = document.createElement('nav')
        nav.className = 'metric-selector'
        for (const metric of this.bundle.metrics) {
            const button = document.createElement('button')
            button.type = 'button'
            button.textContent = metric
            button.dataset.metric = metric
            if (metric === this.state.selected_metric) button.classList.add('selected')
            button.addEventListener('click', () => this.selectMetric(metric))
            nav.appendChild(button)
        }
        return nav
    }

    public render(): void {
        this.container.replaceChildren()
        this.container.appendChild(this.header())
        this.container.appendChild(this.metricSelector())

        if (this.state.selected_function) {
            const back = document.createElement('button')
            back.type = 'button'
            back.className = 'back-button'
            back.textContent = 'back to overview'
            back.addEventListener('click', () => this.navigate({ selected_function: null }))
            this.container.appendChild(back)
            this.container.appendChild(
                renderTraceView(this.bundle, this.state.selected_function),
            )
            return
        }

        this.container.appendChild(
            renderTotalsView(this.bundle, { onFunctionClick: fid => this.selectFunction(fid) }),
        )
        this.container.appendChild(
            renderHistogramView(this.bundle, this.state.selected_metric, this.state.selected_bin, {
                onBinClick: (side, index) => this.selectBin(side, index),
                onFunctionClick: fid => this.selectFunction(fid),
            }),
        )
    }
}

// Entry point for index.html: ?report=<url> picks the bundle, default
// report.json next to the page. Schema and fetch problems render the
// error panel rather than leaving a blank page.
export async function start(container: HTMLElement, url?: string): Promise<App | null> {
    const params = new URLSearchParams(window.location.search)
    const target = url ?? params.get('report') ?? 'report.json'
    try {
        const bundle = await loadBundle(target)
        return new App(container, bundle)
    } catch (err) {
        if (err instanceof SchemaMismatch || err instanceof FetchFailure) {
            renderErrorPanel(container, err)
            return null
        }
        throw err
    }
}
