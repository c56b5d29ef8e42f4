import { describe, expect, it, vi } from 'vitest'

import { renderHistogramView } from '../src/views/histogram.js'
import type { HistogramCallbacks } from '../src/views/histogram.js'
import { fixture } from './helpers.js'

function noopCallbacks(): HistogramCallbacks {
    return { onBinClick: vi.fn(), onFunctionClick: vi.fn() }
}

function barHeights(view: HTMLElement, side: 'a' | 'b'): number[] {
    return Array.from(
        view.querySelectorAll(`.histogram-${side} .bin-column .bar`),
        bar => parseFloat((bar as HTMLElement).style.height),
    )
}

describe('renderHistogramView', () => {
    it('dominant-B fixture puts the green mass in the most significant bin', () => {
        // bdominant: the pair's method B dominates 3 of 6 functions, so the
        // green (B-favored) chart carries the tallest bar in bin [0, 0.01)
        const view = renderHistogramView(fixture('bdominant'), 'best_found', null, noopCallbacks())
        const green = barHeights(view, 'b')
        expect(green[0]).toBe(100)
        expect(green.slice(1).every(h => h === 0)).toBe(true)
        const red = barHeights(view, 'a')
        expect(Math.max(...red)).toBeLessThan(100)
    })

    it('comparable-methods fixture has its mass in insignificant bins', () => {
        const view = renderHistogramView(fixture('comparable'), 'best_found', null, noopCallbacks())
        for (const side of ['a', 'b'] as const) {
            const heights = barHeights(view, side)
            expect(heights[0]).toBe(0)
            expect(heights[1]).toBe(0)
            expect(Math.max(...heights.slice(3))).toBeGreaterThan(0)
        }
    })

    it('labels bins with the bundle edges, last bin right-closed', () => {
        const view = renderHistogramView(fixture('fig1'), 'auc', null, noopCallbacks())
        const labels = Array.from(
            view.querySelectorAll('.histogram-a .bin-label'),
            el => el.textContent,
        )
        expect(labels).toEqual([
            '[0, 0.01)', '[0.01, 0.05)', '[0.05, 0.1)',
            '[0.1, 0.2)', '[0.2, 0.5)', '[0.5, 1]',
        ])
    })

    it('clicking a bin reports its side and index', () => {
        const callbacks = noopCallbacks()
        const view = renderHistogramView(fixture('fig1'), 'auc', null, callbacks)
        const bin = view.querySelector('[data-side="b"][data-bin="3"]') as HTMLElement
        bin.click()
        expect(callbacks.onBinClick).toHaveBeenCalledExactlyOnceWith('b', 3)
    })

    it('a selected bin lists its functions and clicks pass the id along', () => {
        const callbacks = noopCallbacks()
        const view = renderHistogramView(
            fixture('fig1'), 'auc', { side: 'a', index: 0 }, callbacks,
        )
        const links = Array.from(view.querySelectorAll('.function-list a'))
        expect(links.map(a => a.textContent)).toEqual(['neg_sphere_2d'])
        ;(links[0] as HTMLElement).click()
        expect(callbacks.onFunctionClick).toHaveBeenCalledExactlyOnceWith('neg_sphere_2d')
    })

    it('a selected empty bin lists nothing and navigates nowhere', () => {
        const callbacks = noopCallbacks()
        const view = renderHistogramView(
            fixture('fig1'), 'auc', { side: 'b', index: 5 }, callbacks,
        )
        expect(view.querySelector('.bin-functions')).not.toBeNull()
        expect(view.querySelectorAll('.function-list a')).toHaveLength(0)
        expect(callbacks.onFunctionClick).not.toHaveBeenCalled()
    })
})
